#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace kht {

// A generator sigma_index^sign; index is 1-based.
struct Letter {
  int index = 1;
  int sign = 1;
  bool operator==(const Letter&) const = default;
};

class BraidWord {
 public:
  BraidWord() = default;
  BraidWord(int strands, std::vector<Letter> letters);

  // "1,1,-2" style; strands <= 0 means infer max|index|+1.
  static BraidWord parse(std::string_view text, int strands = 0);

  int strands() const { return strands_; }
  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const Letter& operator[](std::size_t i) const { return letters_[i]; }

  std::string to_string() const;
  bool operator==(const BraidWord&) const = default;

 private:
  int strands_ = 1;
  std::vector<Letter> letters_;
};

int writhe(const BraidWord& w);
int self_linking(const BraidWord& w);
int positive_count(const BraidWord& w);
int negative_count(const BraidWord& w);

// perm[p] = top position reached by the strand starting at bottom position p.
std::vector<int> closure_permutation(const BraidWord& w);
int component_count(const BraidWord& w);

struct ComponentData {
  std::vector<std::vector<int>> components;  // bottom positions, 0-based
  std::vector<int> sl;
  std::map<std::pair<int, int>, int> lk;
};
ComponentData component_data(const BraidWord& w);

// g w g^{-1}
BraidWord conjugate(const BraidWord& w, Letter g);
// w[offset..] + w[..offset]; offset taken mod the length.
BraidWord cyclic_shift(const BraidWord& w, int offset);
BraidWord stabilize(const BraidWord& w, int sign);
BraidWord destabilize(const BraidWord& w);
BraidWord transverse_mirror(const BraidWord& w);
BraidWord concat(const BraidWord& a, const BraidWord& b);

// (A s^k B s^eps, A s^eps B s^k) in B_{m+1}, s = sigma_m.
std::pair<BraidWord, BraidWord> flype_pair(const BraidWord& a, const BraidWord& b, int k, int eps,
                                           int m);

enum class MoveKind {
  ConjugateShift,
  InsertRII,
  DeleteRII,
  BraidRelation,
  FarCommute,
  StabilizePos,
  DestabilizePos,
  StabilizeNeg,
  DestabilizeNeg,
};

// position < 0 for (de)stabilizations means "at the end".
struct ElementaryMove {
  MoveKind kind = MoveKind::ConjugateShift;
  int position = -1;
  int index = 0;
  int orientation = 0;
  int offset = 0;
  int stage = 0;

  static ElementaryMove shift(int offset);
  static ElementaryMove insert_rii(int position, int index, int orientation);
  static ElementaryMove delete_rii(int position);
  static ElementaryMove relation(int position);
  static ElementaryMove commute(int position);
  static ElementaryMove stab(int sign, int position = -1);
  static ElementaryMove destab(int sign, int position = -1);
};

struct MoveScript {
  std::vector<ElementaryMove> moves;
  // Optional stage names; moves refer to them by 1-based ElementaryMove::stage.
  std::vector<std::string> stages;
  int stage_count() const;
};

const char* move_name(MoveKind k);
bool is_transverse(MoveKind k);

BraidWord apply_move(const BraidWord& w, const ElementaryMove& mv);
BraidWord replay(const BraidWord& w, const MoveScript& s);
// All intermediate words, starting with w.
std::vector<BraidWord> replay_trace(const BraidWord& w, const MoveScript& s);
// The move undoing mv when applied to apply_move(w, mv).
ElementaryMove inverse_move(const BraidWord& w, const ElementaryMove& mv);
MoveScript inverse_script(const BraidWord& w, const MoveScript& s);

// Transforms A s^k B s^{-1} into A s^{-1} B s^k, s = sigma_m, in eight stages.
MoveScript flype_script(const BraidWord& a, const BraidWord& b, int k, int m);

std::string move_to_text(const ElementaryMove& mv);
ElementaryMove parse_move(std::string_view line);
MoveScript parse_script(std::string_view text);
std::string script_to_text(const MoveScript& s);

}  // namespace kht
