#include "minorlab/order.hpp"

#include <bit>
#include <cctype>

#include "minorlab/errors.hpp"

namespace minorlab {

GroundOrder::GroundOrder(std::vector<std::string> names, std::vector<std::vector<bool>> le)
    : names_(std::move(names)), le_(std::move(le)) {
  const int n = size();
  if (static_cast<int>(le_.size()) != n) throw Error(ErrorKind::InvalidArgument, "relation table shape");
  for (const auto& row : le_)
    if (static_cast<int>(row.size()) != n) throw Error(ErrorKind::InvalidArgument, "relation table shape");
  for (int a = 0; a < n; ++a) {
    if (!le_[a][a]) throw Error(ErrorKind::InvalidArgument, "relation is not reflexive at " + names_[a]);
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (le_[a][b] && le_[b][c] && !le_[a][c]) {
          throw Error(ErrorKind::InvalidArgument, "relation is not transitive");
        }
  }
}

GroundOrder GroundOrder::from_relation(std::vector<std::string> names,
                                       const std::function<bool(int, int)>& le) {
  const int n = static_cast<int>(names.size());
  std::vector<std::vector<bool>> table(n, std::vector<bool>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) table[a][b] = le(a, b);
  return GroundOrder(std::move(names), std::move(table));
}

int GroundOrder::index_of(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  return it == names_.end() ? -1 : static_cast<int>(it - names_.begin());
}

HFSet HFSet::ground(int index) {
  if (index < 0) throw Error(ErrorKind::InvalidArgument, "negative ground index");
  HFSet x;
  x.ground_ = index;
  return x;
}

HFSet HFSet::collection(std::vector<HFSet> items) {
  if (items.empty()) throw Error(ErrorKind::InvalidArgument, "collections are nonempty");
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());
  HFSet x;
  x.items_ = std::move(items);
  return x;
}

std::strong_ordering operator<=>(const HFSet& a, const HFSet& b) {
  if (a.is_ground() != b.is_ground()) return a.is_ground() ? std::strong_ordering::less : std::strong_ordering::greater;
  if (a.is_ground()) return a.ground_ <=> b.ground_;
  return std::lexicographical_compare_three_way(a.items_.begin(), a.items_.end(), b.items_.begin(),
                                                b.items_.end());
}

bool le_plus(const HFSet& x, const HFSet& y, const GroundOrder& q) {
  if (x.is_ground() && y.is_ground()) return q.le(x.index(), y.index());
  if (y.is_ground()) return false;
  if (x.is_ground()) {
    return std::any_of(y.items().begin(), y.items().end(), [&](const HFSet& b) { return le_plus(x, b, q); });
  }
  return std::all_of(x.items().begin(), x.items().end(), [&](const HFSet& a) {
    return std::any_of(y.items().begin(), y.items().end(), [&](const HFSet& b) { return le_plus(a, b, q); });
  });
}

int qrank(const HFSet& x) {
  if (x.is_ground()) return 1;
  int best = 0;
  for (const HFSet& c : x.items()) best = std::max(best, qrank(c));
  return best + 1;
}

std::vector<HFSet> enumerate_hf(int ground_size, int max_qrank, int max_width) {
  std::vector<HFSet> all;
  if (max_qrank < 1) return all;
  for (int i = 0; i < ground_size; ++i) all.push_back(HFSet::ground(i));
  for (int r = 2; r <= max_qrank; ++r) {
    const std::vector<HFSet> below = all;
    const int n = static_cast<int>(below.size());
    std::vector<int> pick;
    // Subsets of `below` of size 1..max_width with some member of rank r-1.
    std::function<void(int)> rec = [&](int start) {
      if (!pick.empty()) {
        bool fresh = std::any_of(pick.begin(), pick.end(), [&](int i) { return qrank(below[i]) == r - 1; });
        if (fresh) {
          std::vector<HFSet> items;
          for (int i : pick) items.push_back(below[i]);
          all.push_back(HFSet::collection(std::move(items)));
        }
      }
      if (static_cast<int>(pick.size()) == max_width) return;
      for (int i = start; i < n; ++i) {
        pick.push_back(i);
        rec(i + 1);
        pick.pop_back();
      }
    };
    rec(0);
  }
  return all;
}

namespace {

class HFReader {
 public:
  HFReader(const std::string& text, const GroundOrder& q) : text_(text), q_(q) {}

  HFSet read_top() {
    HFSet x = read();
    skip();
    if (pos_ < text_.size()) fail("trailing input");
    return x;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(line_, col_, what); }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
  }

  void expect(char ch) {
    skip();
    if (pos_ >= text_.size() || text_[pos_] != ch) fail(std::string("expected '") + ch + "'");
    advance();
  }

  std::string word() {
    skip();
    std::string w;
    while (pos_ < text_.size() && text_[pos_] != '(' && text_[pos_] != ')' &&
           !std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      w += text_[pos_];
      advance();
    }
    if (w.empty()) fail("expected a name");
    return w;
  }

  HFSet read() {
    expect('(');
    const int line = line_;
    const int col = col_;
    if (word() != "hf") throw ParseError(line, col, "expected hf");
    skip();
    if (pos_ < text_.size() && text_[pos_] == '(') {
      advance();
      std::vector<HFSet> items;
      while (true) {
        skip();
        if (pos_ >= text_.size()) fail("unclosed collection");
        if (text_[pos_] == ')') break;
        items.push_back(read());
      }
      advance();
      if (items.empty()) fail("collections are nonempty");
      expect(')');
      return HFSet::collection(std::move(items));
    }
    const int wl = line_;
    const int wc = col_;
    std::string name = word();
    int idx = q_.index_of(name);
    if (idx < 0) throw ParseError(wl, wc, "unknown ground element " + name);
    expect(')');
    return HFSet::ground(idx);
  }

  const std::string& text_;
  const GroundOrder& q_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace

HFSet parse_hf(const std::string& text, const GroundOrder& q) { return HFReader(text, q).read_top(); }

std::string emit_hf(const HFSet& x, const GroundOrder& q) {
  if (x.is_ground()) return "(hf " + q.name(x.index()) + ")";
  std::string s = "(hf (";
  for (std::size_t i = 0; i < x.items().size(); ++i) {
    if (i) s += " ";
    s += emit_hf(x.items()[i], q);
  }
  return s + "))";
}

namespace {

void grow(std::uint64_t chosen, std::uint64_t candidates, const std::vector<std::uint64_t>& adj,
          std::uint64_t& best) {
  if (candidates == 0) {
    if (std::popcount(chosen) > std::popcount(best)) best = chosen;
    return;
  }
  if (std::popcount(chosen) + std::popcount(candidates) <= std::popcount(best)) return;
  const int v = std::countr_zero(candidates);
  grow(chosen | 1ull << v, candidates & ~adj[v] & ~(1ull << v), adj, best);
  grow(chosen, candidates & ~(1ull << v), adj, best);
}

}  // namespace

std::vector<int> max_independent_set(const std::vector<std::uint64_t>& comparable) {
  const int n = static_cast<int>(comparable.size());
  if (n > kMaxAntichainUniverse) throw Error(ErrorKind::BoundExceeded, "antichain universe too large");
  std::uint64_t best = 0;
  const std::uint64_t all = n == 64 ? ~0ull : (1ull << n) - 1;
  grow(0, all, comparable, best);
  std::vector<int> out;
  for (int v = 0; v < n; ++v)
    if (best >> v & 1) out.push_back(v);
  return out;
}

}  // namespace minorlab
