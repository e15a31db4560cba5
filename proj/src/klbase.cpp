#include "klhc/klbase.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include <omp.h>

namespace klhc {

KLTable::KLTable(int window) : window_(window) {
  if (window < 1 || window > kMaxWindow)
    throw std::invalid_argument("window must be between 1 and 16");
}

namespace {

// Index of the leftmost value descent: smallest i such that swapping the
// values i and i+1 shortens y, i.e. i+1 occurs before i in one-line notation.
int leftmost_descent(const Permutation& inv) {
  for (int i = 0; i + 1 < inv.window(); ++i)
    if (inv(i + 1) < inv(i)) return i;
  return -1;
}

}  // namespace

KLTable::Column KLTable::make_column(const Permutation& y, bool recurse) {
  const Permutation id = Permutation::identity(window_);
  if (y == id) {
    Column base;
    base.emplace(id.packed(), IntPolynomial::constant(1));
    return base;
  }

  const Permutation yinv = y.inverse();
  const int i = leftmost_descent(yinv);
  const Permutation s = Permutation::transposition(window_, i, i + 1);
  const Permutation sy = s * y;
  const int lsy = sy.length();

  const Column* csy = column_ptr(sy, recurse);

  // mu-correction terms: w < sy with sw < w and mu(w, sy) != 0. Everything
  // needed is readable off column(sy).
  struct Corr {
    uint64_t wkey;
    int64_t mu;
    int exp;  // (l(y) - l(w)) / 2
  };
  std::vector<Corr> corr;
  const uint64_t sykey = sy.packed();
  for (const auto& [wkey, pw] : *csy) {
    if (wkey == sykey) continue;
    const Permutation w = Permutation::from_packed(wkey, window_);
    const Permutation winv = w.inverse();
    if (winv(i + 1) < winv(i)) {
      const int d = lsy - w.length();
      if (d & 1) {
        const int64_t m = pw.coeff((d - 1) / 2);
        if (m != 0) corr.push_back({wkey, m, (d + 1) / 2});
      }
    }
  }
  for (const auto& c : corr)
    column_ptr(Permutation::from_packed(c.wkey, window_), recurse);

  // {x <= y} = {v <= sy} together with s * {v <= sy}.
  std::vector<std::pair<int, uint64_t>> keys;  // (length, packed)
  keys.reserve(2 * csy->size());
  for (const auto& [vkey, unused] : *csy) {
    const Permutation v = Permutation::from_packed(vkey, window_);
    keys.emplace_back(v.length(), vkey);
    const Permutation sv = s * v;
    keys.emplace_back(sv.length(), sv.packed());
  }
  std::sort(keys.begin(), keys.end(),
            [](const auto& a, const auto& b) {
              return a.first != b.first ? a.first > b.first
                                        : a.second < b.second;
            });
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());

  // Longer x first, so the ascent branch can read P_{sx,y} from this very
  // column.
  Column out;
  out.reserve(keys.size());
  for (const auto& [len, xkey] : keys) {
    (void)len;
    const Permutation x = Permutation::from_packed(xkey, window_);
    const Permutation xinv = x.inverse();
    const uint64_t sxkey = (s * x).packed();
    IntPolynomial p;
    if (xinv(i + 1) > xinv(i)) {
      p = out.at(sxkey);  // ascent: P_{x,y} = P_{sx,y}
    } else {
      p = csy->at(sxkey);
      if (auto it = csy->find(xkey); it != csy->end())
        p += it->second.shifted(1);
      for (const auto& c : corr) {
        const Column& cw = columns_.at(c.wkey);
        if (auto it = cw.find(xkey); it != cw.end())
          p -= it->second.scaled(c.mu).shifted(c.exp);
      }
    }
    if (p.is_zero() || p.coeff(0) != 1)
      throw std::logic_error("KL recursion produced an invalid polynomial");
    out.emplace(xkey, std::move(p));
  }
  return out;
}

const KLTable::Column* KLTable::column_ptr(const Permutation& y, bool recurse) {
  auto it = columns_.find(y.packed());
  if (it != columns_.end()) return &it->second;
  if (!recurse)
    throw std::logic_error("missing dependency column in frozen KL build");
  return &ensure_column(y);
}

const KLTable::Column& KLTable::ensure_column(const Permutation& y) {
  auto it = columns_.find(y.packed());
  if (it != columns_.end()) return it->second;
  Column c = make_column(y, true);
  return columns_.emplace(y.packed(), std::move(c)).first->second;
}

IntPolynomial KLTable::kl(const Permutation& x, const Permutation& y) {
  if (x.window() != window_ || y.window() != window_)
    throw std::invalid_argument("window mismatch in KL query");
  if (auto it = columns_.find(y.packed()); it != columns_.end()) {
    auto jt = it->second.find(x.packed());
    return jt != it->second.end() ? jt->second : IntPolynomial{};
  }
  if (x == y) return IntPolynomial::constant(1);
  if (!bruhat_leq(x, y)) return {};
  if (auto it = external_.find(y.packed()); it != external_.end()) {
    auto jt = it->second.find(x.packed());
    if (jt != it->second.end()) return jt->second;
  }
  return ensure_column(y).at(x.packed());
}

const IntPolynomial* KLTable::find(const Permutation& x,
                                   const Permutation& y) const {
  auto it = columns_.find(y.packed());
  if (it == columns_.end()) return nullptr;
  auto jt = it->second.find(x.packed());
  return jt != it->second.end() ? &jt->second : nullptr;
}

int64_t KLTable::mu(const Permutation& x, const Permutation& y) {
  if (x == y || !bruhat_leq(x, y))
    throw std::invalid_argument("mu requires x strictly below y");
  const int d = y.length() - x.length();
  if (!(d & 1)) return 0;
  return kl(x, y).coeff((d - 1) / 2);
}

IntPolynomial KLTable::partial_kl(const Permutation& x, const Permutation& y) {
  if (!bruhat_leq(x, y))
    throw std::invalid_argument("partial_kl requires x below y");
  if (x == y) return {};  // N = 0 forces the transform to vanish
  return partial_transform(kl(x, y), y.length() - x.length());
}

void KLTable::precompute_all(int jobs) {
  const std::vector<Permutation> all = enumerate_symmetric_group(window_);
  const int maxlen = window_ * (window_ - 1) / 2;
  std::vector<std::vector<Permutation>> by_len(size_t(maxlen) + 1);
  for (const Permutation& p : all) by_len[size_t(p.length())].push_back(p);

  for (int level = 0; level <= maxlen; ++level) {
    std::vector<Permutation> todo;
    for (const Permutation& y : by_len[size_t(level)])
      if (!columns_.count(y.packed())) todo.push_back(y);
    if (todo.empty()) continue;
    if (jobs <= 1 || todo.size() < 2) {
      for (const Permutation& y : todo)
        columns_.emplace(y.packed(), make_column(y, false));
    } else {
      std::vector<Column> built(todo.size());
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
      for (std::ptrdiff_t k = 0; k < std::ptrdiff_t(todo.size()); ++k)
        built[size_t(k)] = make_column(todo[size_t(k)], false);
      for (size_t k = 0; k < todo.size(); ++k)
        columns_.emplace(todo[k].packed(), std::move(built[k]));
    }
  }
}

std::size_t KLTable::entries() const {
  std::size_t n = 0;
  for (const auto& [unused, col] : columns_) n += col.size();
  return n;
}

void KLTable::save_cache(const std::string& path) const {
  std::vector<std::string> lines;
  lines.reserve(entries());
  for (const auto& [ykey, col] : columns_) {
    const std::string ystr = Permutation::from_packed(ykey, window_).str();
    for (const auto& [xkey, p] : col)
      lines.push_back(Permutation::from_packed(xkey, window_).str() + "\t" +
                      ystr + "\t" + p.coeff_list_str());
  }
  for (const auto& [ykey, col] : external_) {
    if (columns_.count(ykey)) continue;
    const std::string ystr = Permutation::from_packed(ykey, window_).str();
    for (const auto& [xkey, p] : col)
      lines.push_back(Permutation::from_packed(xkey, window_).str() + "\t" +
                      ystr + "\t" + p.coeff_list_str());
  }
  std::sort(lines.begin(), lines.end());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write cache file: " + path);
  for (const std::string& l : lines) out << l << "\n";
}

void KLTable::load_cache(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read cache file: " + path);
  std::string line;
  size_t lineno = 0;
  auto fail = [&](const std::string& why) {
    throw std::runtime_error("cache file " + path + " line " +
                             std::to_string(lineno) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const size_t t1 = line.find('\t');
    const size_t t2 = (t1 == std::string::npos) ? std::string::npos
                                                : line.find('\t', t1 + 1);
    if (t1 == std::string::npos || t2 == std::string::npos)
      fail("expected three tab-separated fields");
    Permutation x, y;
    IntPolynomial p;
    try {
      x = parse_permutation(line.substr(0, t1));
      y = parse_permutation(line.substr(t1 + 1, t2 - t1 - 1));
      p = parse_polynomial(line.substr(t2 + 1));
    } catch (const std::exception& e) {
      fail(e.what());
    }
    if (x.window() != window_ || y.window() != window_)
      fail("window does not match the table");
    if (x == y) {
      if (!(p == IntPolynomial::constant(1))) fail("P_{x,x} must be 1");
    } else {
      if (!bruhat_leq(x, y)) fail("x is not below y");
      if (p.coeff(0) != 1) fail("constant term must be 1");
      if (!p.nonneg_coeffs()) fail("negative coefficient");
      if (2 * p.degree() > y.length() - x.length() - 1)
        fail("degree bound violated");
    }
    external_[y.packed()][x.packed()] = p;
  }
}

std::vector<Permutation> enumerate_symmetric_group(int window) {
  if (window < 1 || window > 8)
    throw std::invalid_argument("group enumeration supported for window <= 8");
  std::vector<int> v(static_cast<size_t>(window));
  std::iota(v.begin(), v.end(), 0);
  std::vector<Permutation> out;
  size_t fact = 1;
  for (int k = 2; k <= window; ++k) fact *= size_t(k);
  out.reserve(fact);
  do {
    out.emplace_back(v);
  } while (std::next_permutation(v.begin(), v.end()));
  return out;
}

}  // namespace klhc
