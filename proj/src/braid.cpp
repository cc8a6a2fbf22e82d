#include "kht/braid.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <sstream>

#include "kht/errors.hpp"

namespace kht {

BraidWord::BraidWord(int strands, std::vector<Letter> letters)
    : strands_(strands), letters_(std::move(letters)) {
  if (strands_ < 1) throw Error(ErrorKind::IndexOutOfRange, "strand count must be positive");
  for (const Letter& l : letters_) {
    if (l.index < 1 || l.index > strands_ - 1)
      throw Error(ErrorKind::IndexOutOfRange,
                  "letter index " + std::to_string(l.index) + " outside [1," +
                      std::to_string(strands_ - 1) + "]");
    if (l.sign != 1 && l.sign != -1) throw Error(ErrorKind::IndexOutOfRange, "letter sign must be +-1");
  }
}

BraidWord BraidWord::parse(std::string_view text, int strands) {
  std::vector<Letter> letters;
  int top = 0;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\n' || text[i] == '\r'))
      ++i;
  };
  skip();
  while (i < text.size()) {
    std::size_t j = i;
    while (j < text.size() && text[j] != ',') ++j;
    std::string_view tok = text.substr(i, j - i);
    while (!tok.empty() && (tok.back() == ' ' || tok.back() == '\n' || tok.back() == '\r'))
      tok.remove_suffix(1);
    if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
    int v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || p != tok.data() + tok.size() || v == 0)
      throw Error(ErrorKind::ParseError, "bad braid letter '" + std::string(tok) + "'");
    letters.push_back({std::abs(v), v > 0 ? 1 : -1});
    top = std::max(top, std::abs(v));
    i = j < text.size() ? j + 1 : j;
    skip();
  }
  if (strands <= 0) strands = top + 1;
  return BraidWord(strands, std::move(letters));
}

std::string BraidWord::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(letters_[i].sign * letters_[i].index);
  }
  return s;
}

int writhe(const BraidWord& w) {
  int s = 0;
  for (const Letter& l : w.letters()) s += l.sign;
  return s;
}

int self_linking(const BraidWord& w) { return writhe(w) - w.strands(); }

int positive_count(const BraidWord& w) {
  return static_cast<int>(std::count_if(w.letters().begin(), w.letters().end(),
                                        [](const Letter& l) { return l.sign > 0; }));
}

int negative_count(const BraidWord& w) { return static_cast<int>(w.size()) - positive_count(w); }

std::vector<int> closure_permutation(const BraidWord& w) {
  // at[p] = starting position of the strand currently at position p
  std::vector<int> at(w.strands());
  for (int p = 0; p < w.strands(); ++p) at[p] = p;
  for (const Letter& l : w.letters()) std::swap(at[l.index - 1], at[l.index]);
  std::vector<int> perm(w.strands());
  for (int p = 0; p < w.strands(); ++p) perm[at[p]] = p;
  return perm;
}

namespace {

std::vector<int> component_of_start(const BraidWord& w, int* count) {
  std::vector<int> perm = closure_permutation(w);
  std::vector<int> comp(w.strands(), -1);
  int c = 0;
  for (int p = 0; p < w.strands(); ++p) {
    if (comp[p] >= 0) continue;
    for (int q = p; comp[q] < 0; q = perm[q]) comp[q] = c;
    ++c;
  }
  if (count) *count = c;
  return comp;
}

}  // namespace

int component_count(const BraidWord& w) {
  int c = 0;
  component_of_start(w, &c);
  return c;
}

ComponentData component_data(const BraidWord& w) {
  int count = 0;
  std::vector<int> comp = component_of_start(w, &count);
  ComponentData out;
  out.components.resize(count);
  for (int p = 0; p < w.strands(); ++p) out.components[comp[p]].push_back(p);
  std::vector<int> writhes(count, 0);
  std::vector<int> twice_lk(count * count, 0);
  std::vector<int> at(w.strands());
  for (int p = 0; p < w.strands(); ++p) at[p] = comp[p];
  for (const Letter& l : w.letters()) {
    int a = at[l.index - 1], b = at[l.index];
    if (a == b)
      writhes[a] += l.sign;
    else
      twice_lk[std::min(a, b) * count + std::max(a, b)] += l.sign;
    std::swap(at[l.index - 1], at[l.index]);
  }
  for (int c = 0; c < count; ++c)
    out.sl.push_back(writhes[c] - static_cast<int>(out.components[c].size()));
  for (int a = 0; a < count; ++a)
    for (int b = a + 1; b < count; ++b) out.lk[{a, b}] = twice_lk[a * count + b] / 2;
  return out;
}

BraidWord conjugate(const BraidWord& w, Letter g) {
  std::vector<Letter> ls;
  ls.reserve(w.size() + 2);
  ls.push_back(g);
  ls.insert(ls.end(), w.letters().begin(), w.letters().end());
  ls.push_back({g.index, -g.sign});
  return BraidWord(w.strands(), std::move(ls));
}

BraidWord cyclic_shift(const BraidWord& w, int offset) {
  int n = static_cast<int>(w.size());
  if (n == 0) return w;
  int s = ((offset % n) + n) % n;
  std::vector<Letter> ls(w.letters().begin() + s, w.letters().end());
  ls.insert(ls.end(), w.letters().begin(), w.letters().begin() + s);
  return BraidWord(w.strands(), std::move(ls));
}

BraidWord stabilize(const BraidWord& w, int sign) {
  return apply_move(w, ElementaryMove::stab(sign));
}

BraidWord destabilize(const BraidWord& w) {
  if (w.empty()) throw Error(ErrorKind::InvalidDestabilization, "empty word");
  return apply_move(w, ElementaryMove::destab(w.letters().back().sign));
}

BraidWord transverse_mirror(const BraidWord& w) {
  std::vector<Letter> ls(w.letters().rbegin(), w.letters().rend());
  return BraidWord(w.strands(), std::move(ls));
}

BraidWord concat(const BraidWord& a, const BraidWord& b) {
  std::vector<Letter> ls = a.letters();
  ls.insert(ls.end(), b.letters().begin(), b.letters().end());
  return BraidWord(std::max(a.strands(), b.strands()), std::move(ls));
}

namespace {

void check_below(const BraidWord& w, int m, const char* what) {
  for (const Letter& l : w.letters())
    if (l.index >= m)
      throw Error(ErrorKind::IndexOutOfRange,
                  std::string(what) + " uses index " + std::to_string(l.index) + " >= m = " +
                      std::to_string(m));
}

void append_power(std::vector<Letter>& ls, int index, int k) {
  for (int i = 0; i < std::abs(k); ++i) ls.push_back({index, k > 0 ? 1 : -1});
}

}  // namespace

std::pair<BraidWord, BraidWord> flype_pair(const BraidWord& a, const BraidWord& b, int k, int eps,
                                           int m) {
  check_below(a, m, "A");
  check_below(b, m, "B");
  std::vector<Letter> l1 = a.letters(), l2 = a.letters();
  append_power(l1, m, k);
  l1.insert(l1.end(), b.letters().begin(), b.letters().end());
  append_power(l1, m, eps);
  append_power(l2, m, eps);
  l2.insert(l2.end(), b.letters().begin(), b.letters().end());
  append_power(l2, m, k);
  return {BraidWord(m + 1, std::move(l1)), BraidWord(m + 1, std::move(l2))};
}

ElementaryMove ElementaryMove::shift(int offset) {
  ElementaryMove m;
  m.kind = MoveKind::ConjugateShift;
  m.offset = offset;
  return m;
}

ElementaryMove ElementaryMove::insert_rii(int position, int index, int orientation) {
  ElementaryMove m;
  m.kind = MoveKind::InsertRII;
  m.position = position;
  m.index = index;
  m.orientation = orientation;
  return m;
}

ElementaryMove ElementaryMove::delete_rii(int position) {
  ElementaryMove m;
  m.kind = MoveKind::DeleteRII;
  m.position = position;
  return m;
}

ElementaryMove ElementaryMove::relation(int position) {
  ElementaryMove m;
  m.kind = MoveKind::BraidRelation;
  m.position = position;
  return m;
}

ElementaryMove ElementaryMove::commute(int position) {
  ElementaryMove m;
  m.kind = MoveKind::FarCommute;
  m.position = position;
  return m;
}

ElementaryMove ElementaryMove::stab(int sign, int position) {
  ElementaryMove m;
  m.kind = sign > 0 ? MoveKind::StabilizePos : MoveKind::StabilizeNeg;
  m.position = position;
  return m;
}

ElementaryMove ElementaryMove::destab(int sign, int position) {
  ElementaryMove m;
  m.kind = sign > 0 ? MoveKind::DestabilizePos : MoveKind::DestabilizeNeg;
  m.position = position;
  return m;
}

int MoveScript::stage_count() const {
  int top = static_cast<int>(stages.size());
  for (const ElementaryMove& m : moves) top = std::max(top, m.stage);
  return top;
}

const char* move_name(MoveKind k) {
  switch (k) {
    case MoveKind::ConjugateShift: return "shift";
    case MoveKind::InsertRII: return "insert-rii";
    case MoveKind::DeleteRII: return "delete-rii";
    case MoveKind::BraidRelation: return "braid-relation";
    case MoveKind::FarCommute: return "far-commute";
    case MoveKind::StabilizePos: return "stabilize+";
    case MoveKind::DestabilizePos: return "destabilize+";
    case MoveKind::StabilizeNeg: return "stabilize-";
    case MoveKind::DestabilizeNeg: return "destabilize-";
  }
  return "?";
}

bool is_transverse(MoveKind k) { return k != MoveKind::StabilizeNeg && k != MoveKind::DestabilizeNeg; }

namespace {

[[noreturn]] void mismatch(const BraidWord& w, const ElementaryMove& mv, const std::string& why) {
  throw Error(ErrorKind::PatternMismatch,
              std::string(move_name(mv.kind)) + " on [" + w.to_string() + "]: " + why);
}

}  // namespace

BraidWord apply_move(const BraidWord& w, const ElementaryMove& mv) {
  const int n = static_cast<int>(w.size());
  const int m = w.strands();
  std::vector<Letter> ls = w.letters();
  switch (mv.kind) {
    case MoveKind::ConjugateShift:
      return cyclic_shift(w, mv.offset);
    case MoveKind::InsertRII: {
      if (mv.position < 0 || mv.position > n) mismatch(w, mv, "position out of range");
      if (mv.index < 1 || mv.index > m - 1) mismatch(w, mv, "index out of range");
      if (mv.orientation != 1 && mv.orientation != -1) mismatch(w, mv, "orientation must be +-1");
      Letter a{mv.index, mv.orientation}, b{mv.index, -mv.orientation};
      ls.insert(ls.begin() + mv.position, {a, b});
      return BraidWord(m, std::move(ls));
    }
    case MoveKind::DeleteRII: {
      if (mv.position < 0 || mv.position + 1 >= n) mismatch(w, mv, "position out of range");
      const Letter &a = ls[mv.position], &b = ls[mv.position + 1];
      if (a.index != b.index || a.sign != -b.sign) mismatch(w, mv, "letters are not an inverse pair");
      ls.erase(ls.begin() + mv.position, ls.begin() + mv.position + 2);
      return BraidWord(m, std::move(ls));
    }
    case MoveKind::BraidRelation: {
      if (mv.position < 0 || mv.position + 2 >= n) mismatch(w, mv, "position out of range");
      Letter x = ls[mv.position], y = ls[mv.position + 1], z = ls[mv.position + 2];
      if (x.index != z.index || std::abs(x.index - y.index) != 1)
        mismatch(w, mv, "not a braid-relation triple");
      if (x.sign != y.sign && y.sign != z.sign) mismatch(w, mv, "sign pattern admits no relation");
      ls[mv.position] = {y.index, z.sign};
      ls[mv.position + 1] = {x.index, y.sign};
      ls[mv.position + 2] = {y.index, x.sign};
      return BraidWord(m, std::move(ls));
    }
    case MoveKind::FarCommute: {
      if (mv.position < 0 || mv.position + 1 >= n) mismatch(w, mv, "position out of range");
      if (std::abs(ls[mv.position].index - ls[mv.position + 1].index) < 2)
        mismatch(w, mv, "letters do not commute");
      std::swap(ls[mv.position], ls[mv.position + 1]);
      return BraidWord(m, std::move(ls));
    }
    case MoveKind::StabilizePos:
    case MoveKind::StabilizeNeg: {
      int pos = mv.position < 0 ? n : mv.position;
      if (pos > n) mismatch(w, mv, "position out of range");
      ls.insert(ls.begin() + pos, Letter{m, mv.kind == MoveKind::StabilizePos ? 1 : -1});
      return BraidWord(m + 1, std::move(ls));
    }
    case MoveKind::DestabilizePos:
    case MoveKind::DestabilizeNeg: {
      int pos = mv.position < 0 ? n - 1 : mv.position;
      int sign = mv.kind == MoveKind::DestabilizePos ? 1 : -1;
      auto fail = [&](const std::string& why) {
        throw Error(ErrorKind::InvalidDestabilization, "[" + w.to_string() + "]: " + why);
      };
      if (m < 2 || pos < 0 || pos >= n) fail("no letter at the destabilization position");
      if (ls[pos].index != m - 1 || ls[pos].sign != sign)
        fail("letter is not sigma_{m-1} with the expected sign");
      for (int i = 0; i < n; ++i)
        if (i != pos && ls[i].index == m - 1) fail("top index occurs more than once");
      ls.erase(ls.begin() + pos);
      return BraidWord(m - 1, std::move(ls));
    }
  }
  return w;
}

BraidWord replay(const BraidWord& w, const MoveScript& s) {
  BraidWord cur = w;
  for (const ElementaryMove& mv : s.moves) cur = apply_move(cur, mv);
  return cur;
}

std::vector<BraidWord> replay_trace(const BraidWord& w, const MoveScript& s) {
  std::vector<BraidWord> out{w};
  for (const ElementaryMove& mv : s.moves) out.push_back(apply_move(out.back(), mv));
  return out;
}

ElementaryMove inverse_move(const BraidWord& w, const ElementaryMove& mv) {
  const int n = static_cast<int>(w.size());
  ElementaryMove inv;
  switch (mv.kind) {
    case MoveKind::ConjugateShift: inv = ElementaryMove::shift(-mv.offset); break;
    case MoveKind::InsertRII: inv = ElementaryMove::delete_rii(mv.position); break;
    case MoveKind::DeleteRII:
      inv = ElementaryMove::insert_rii(mv.position, w[mv.position].index, w[mv.position].sign);
      break;
    case MoveKind::BraidRelation: inv = ElementaryMove::relation(mv.position); break;
    case MoveKind::FarCommute: inv = ElementaryMove::commute(mv.position); break;
    case MoveKind::StabilizePos:
    case MoveKind::StabilizeNeg:
      inv = ElementaryMove::destab(mv.kind == MoveKind::StabilizePos ? 1 : -1,
                                   mv.position < 0 ? n : mv.position);
      break;
    case MoveKind::DestabilizePos:
    case MoveKind::DestabilizeNeg:
      inv = ElementaryMove::stab(mv.kind == MoveKind::DestabilizePos ? 1 : -1,
                                 mv.position < 0 ? n - 1 : mv.position);
      break;
  }
  inv.stage = mv.stage;
  return inv;
}

MoveScript inverse_script(const BraidWord& w, const MoveScript& s) {
  std::vector<BraidWord> trace = replay_trace(w, s);
  MoveScript out;
  for (std::size_t i = s.moves.size(); i-- > 0;) out.moves.push_back(inverse_move(trace[i], s.moves[i]));
  return out;
}

MoveScript flype_script(const BraidWord& a, const BraidWord& b, int k, int m) {
  check_below(a, m, "A");
  check_below(b, m, "B");
  const int na = static_cast<int>(a.size()), nb = static_cast<int>(b.size());
  const int q = std::abs(k + 1);
  MoveScript s;
  s.stages = {"RII",        "negative stabilization", "braid relation", "far commutation",
              "conjugation", "braid relation",         "negative destabilization", "RII"};
  auto add = [&](ElementaryMove mv, int stage) {
    mv.stage = stage;
    s.moves.push_back(mv);
  };
  // s^{-1} s^{k+1} after A; for k < 0 the word already has this form.
  if (k >= 0) add(ElementaryMove::insert_rii(na, m, -1), 1);
  add(ElementaryMove::stab(-1, na + 1), 2);
  for (int t = 0; t < q; ++t) add(ElementaryMove::relation(na + t), 3);
  for (int t = 0; t < q; ++t)
    for (int p = na - 1; p >= 0; --p) add(ElementaryMove::commute(t + p), 4);
  for (int p = 0; p < nb; ++p) add(ElementaryMove::commute(q + na + 1 + p), 4);
  if (q > 0) add(ElementaryMove::shift(q), 5);
  for (int t = 0; t < q; ++t) add(ElementaryMove::relation(na + 1 + nb + t), 6);
  add(ElementaryMove::destab(-1, na + 1 + nb + q), 7);
  if (k >= 0) add(ElementaryMove::delete_rii(na + 1 + nb + k), 8);
  return s;
}

std::string move_to_text(const ElementaryMove& mv) {
  std::ostringstream os;
  os << move_name(mv.kind);
  switch (mv.kind) {
    case MoveKind::ConjugateShift: os << ' ' << mv.offset; break;
    case MoveKind::InsertRII: os << ' ' << mv.position << ' ' << mv.index << ' ' << mv.orientation; break;
    case MoveKind::DeleteRII:
    case MoveKind::BraidRelation:
    case MoveKind::FarCommute: os << ' ' << mv.position; break;
    default:
      if (mv.position >= 0) os << ' ' << mv.position;
  }
  return os.str();
}

ElementaryMove parse_move(std::string_view line) {
  std::istringstream is{std::string(line)};
  std::string name;
  is >> name;
  std::vector<int> args;
  std::string tok;
  while (is >> tok) {
    int v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size())
      throw Error(ErrorKind::ParseError, "bad move argument '" + tok + "'");
    args.push_back(v);
  }
  auto need = [&](std::size_t lo, std::size_t hi) {
    if (args.size() < lo || args.size() > hi)
      throw Error(ErrorKind::ParseError, "wrong argument count for '" + name + "'");
  };
  if (name == "shift") { need(1, 1); return ElementaryMove::shift(args[0]); }
  if (name == "insert-rii") { need(3, 3); return ElementaryMove::insert_rii(args[0], args[1], args[2]); }
  if (name == "delete-rii") { need(1, 1); return ElementaryMove::delete_rii(args[0]); }
  if (name == "braid-relation") { need(1, 1); return ElementaryMove::relation(args[0]); }
  if (name == "far-commute") { need(1, 1); return ElementaryMove::commute(args[0]); }
  int pos = args.empty() ? -1 : args[0];
  if (name == "stabilize+") { need(0, 1); return ElementaryMove::stab(1, pos); }
  if (name == "stabilize-") { need(0, 1); return ElementaryMove::stab(-1, pos); }
  if (name == "destabilize+") { need(0, 1); return ElementaryMove::destab(1, pos); }
  if (name == "destabilize-") { need(0, 1); return ElementaryMove::destab(-1, pos); }
  throw Error(ErrorKind::ParseError, "unknown move '" + name + "'");
}

MoveScript parse_script(std::string_view text) {
  MoveScript s;
  std::size_t i = 0;
  while (i <= text.size()) {
    std::size_t j = text.find('\n', i);
    if (j == std::string_view::npos) j = text.size();
    std::string_view line = text.substr(i, j - i);
    if (auto h = line.find('#'); h != std::string_view::npos) line = line.substr(0, h);
    while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) line.remove_prefix(1);
    while (!line.empty() && (line.back() == ' ' || line.back() == '\r' || line.back() == '\t'))
      line.remove_suffix(1);
    if (!line.empty()) s.moves.push_back(parse_move(line));
    i = j + 1;
  }
  return s;
}

std::string script_to_text(const MoveScript& s) {
  std::string out;
  for (const ElementaryMove& mv : s.moves) out += move_to_text(mv) + "\n";
  return out;
}

}  // namespace kht
