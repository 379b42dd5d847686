// fil :: canonical frame enumeration and bounded countermodel search
#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "fil/veltman.hpp"

namespace fil {

namespace {

std::uint32_t full_mask(int n) { return (1u << n) - 1u; }

bool r_ok(int n, const std::vector<std::uint32_t>& R) {
  for (int w = 0; w < n; ++w) {
    if ((R[w] >> w) & 1u) return false;  // irreflexive
    for (int u = 0; u < n; ++u)
      if ((R[w] >> u) & 1u)
        if (R[u] & ~R[w]) return false;  // transitive
  }
  return true;
}

// All admissible S_w rows for one world, ascending by pair encoding
// (bit u*n+v of the encoding means u S_w v). Forced pairs: the diagonal on
// R[w] and every (u,v) with u,v in R[w] and u R v; free pairs may be toggled
// as long as the relation stays transitive.
std::vector<std::vector<std::uint32_t>> s_options(int n, const std::vector<std::uint32_t>& R,
                                                  int w) {
  const std::uint32_t rw = R[w];
  std::vector<std::uint32_t> base(n, 0);
  std::vector<int> free_pairs;  // encoded u*n+v, ascending
  for (int u = 0; u < n; ++u) {
    if (!((rw >> u) & 1u)) continue;
    base[u] = (1u << u) | R[u];  // R[u] is within R[w] by transitivity
    for (int v = 0; v < n; ++v)
      if (((rw >> v) & 1u) && !((base[u] >> v) & 1u)) free_pairs.push_back(u * n + v);
  }
  std::vector<std::vector<std::uint32_t>> out;
  const std::uint64_t total = 1ull << free_pairs.size();
  for (std::uint64_t pick = 0; pick < total; ++pick) {
    std::vector<std::uint32_t> rows = base;
    for (std::size_t i = 0; i < free_pairs.size(); ++i)
      if ((pick >> i) & 1u) rows[free_pairs[i] / n] |= 1u << (free_pairs[i] % n);
    bool ok = true;
    for (int u = 0; u < n && ok; ++u)
      for (int v = 0; v < n && ok; ++v)
        if ((rows[u] >> v) & 1u)
          if (rows[v] & ~rows[u]) ok = false;
    if (ok) out.push_back(std::move(rows));
  }
  // Ascending subset counters map to ascending pair encodings because the
  // free pair list itself is ascending, so `out` is already sorted.
  return out;
}

}  // namespace

void enumerate_frames(int n, const std::function<bool(const Frame&)>& visit) {
  if (n < 1 || n > 5)
    throw std::domain_error("enumerate_frames: world count must be between 1 and 5");
  const std::uint64_t rtotal = 1ull << (n * n);
  Frame fr;
  fr.n = n;
  for (std::uint64_t rmask = 0; rmask < rtotal; ++rmask) {
    std::vector<std::uint32_t> R(n, 0);
    for (int i = 0; i < n; ++i) R[i] = (rmask >> (i * n)) & full_mask(n);
    if (!r_ok(n, R)) continue;
    std::vector<std::vector<std::vector<std::uint32_t>>> opts(n);
    for (int w = 0; w < n; ++w) opts[w] = s_options(n, R, w);
    std::vector<std::size_t> idx(n, 0);
    fr.R = R;
    for (;;) {
      fr.S.clear();
      for (int w = 0; w < n; ++w) fr.S.push_back(opts[w][idx[w]]);
      if (!visit(fr)) return;
      int w = n - 1;
      while (w >= 0) {
        if (++idx[w] < opts[w].size()) break;
        idx[w] = 0;
        --w;
      }
      if (w < 0) break;
    }
  }
}

FrameResult frame_valid(const Frame& fr, const FormulaPtr& f,
                        const std::vector<std::string>& letters,
                        long long max_valuations) {
  const int n = fr.n;
  const int k = static_cast<int>(letters.size());
  if (k * n >= 62 || (1LL << (k * n)) > max_valuations)
    return {FrameStatus::BudgetExceeded, {}, -1};
  std::vector<std::string> ls = letters;
  std::sort(ls.begin(), ls.end());
  ls.erase(std::unique(ls.begin(), ls.end()), ls.end());
  VeltmanModel m;
  m.n = n;
  m.R = fr.R;
  m.S = fr.S;
  const std::uint32_t full = full_mask(n);
  const std::uint64_t total = 1ull << (static_cast<int>(ls.size()) * n);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    for (int i = static_cast<int>(ls.size()) - 1; i >= 0; --i) {
      m.val[ls[i]] = static_cast<std::uint32_t>(c) & full;
      c >>= n;
    }
    const std::uint32_t res = eval_all(m, f);
    if (res != full) {
      int w = std::countr_zero(~res & full);
      return {FrameStatus::Falsified, m, w};
    }
  }
  return {FrameStatus::Valid, {}, -1};
}

SearchResult countermodel_search(const FormulaPtr& f, const SearchBudget& budget) {
  if (budget.max_worlds < 1)
    throw std::invalid_argument("countermodel_search: max_worlds must be at least 1");
  auto pv = prop_vars(f);
  std::vector<std::string> letters(pv.begin(), pv.end());  // set iteration is sorted
  if (static_cast<int>(letters.size()) > budget.max_letters)
    return {SearchStatus::BudgetExceeded, {}, -1};
  for (int n = 1; n <= budget.max_worlds; ++n) {
    if (n > 5) return {SearchStatus::BudgetExceeded, {}, -1};
    SearchResult hit;
    bool found = false;
    enumerate_frames(n, [&](const Frame& fr) {
      FrameResult r = frame_valid(fr, f, letters, 1LL << 62);
      if (r.status == FrameStatus::Falsified) {
        hit = {SearchStatus::Found, r.model, r.world};
        found = true;
        return false;
      }
      return true;
    });
    if (found) return hit;
  }
  return {SearchStatus::ValidWithinBudget, {}, -1};
}

}  // namespace fil
