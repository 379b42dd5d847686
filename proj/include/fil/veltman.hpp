// fil :: finite Veltman models for the label-free fragment
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "fil/formula.hpp"

namespace fil {

// Worlds are 0..n-1 with n <= 32; every relation is stored row-wise as
// successor bitmasks (bit v of R[w] means w R v, bit v of S[w][u] means
// u S_w v). Valuations map a letter to the set of worlds where it holds.
struct VeltmanModel {
  int n = 0;
  std::vector<std::uint32_t> R;
  std::vector<std::vector<std::uint32_t>> S;
  std::map<std::string, std::uint32_t> val;
};

// True iff: sizes are consistent (1 <= n <= 32); R is transitive and
// irreflexive; each S_w lives inside R[w] x R[w], is reflexive on R[w] and
// transitive; wRuRv implies u S_w v; valuation masks stay in range.
bool check_wf(const VeltmanModel& m);

// Truth at one world / at every world at once (bit w of the result). The
// formula must be label-free: a nonempty label raises std::invalid_argument.
// Letters absent from the valuation are false everywhere.
bool eval(const VeltmanModel& m, int w, const FormulaPtr& f);
std::uint32_t eval_all(const VeltmanModel& m, const FormulaPtr& f);

// Text form: "worlds N", then one "R: i j" per R-pair, one "S w: i j" per
// S_w-pair, and one "val p: i j k" per letter. parse_model accepts the same
// shape with % comments and blank lines; it throws std::invalid_argument on
// malformed input and does not itself require well-formedness.
std::string format_model(const VeltmanModel& m);
VeltmanModel parse_model(const std::string& text);

// A model without its valuation.
struct Frame {
  int n = 0;
  std::vector<std::uint32_t> R;
  std::vector<std::vector<std::uint32_t>> S;
};

struct SearchBudget {
  int max_worlds = 4;
  int max_letters = 3;
};

// Streams every well-formed frame on exactly n worlds, ordered by the R
// encoding (bit i*n+j means i R j, masks ascending) and then by the tuple
// (S_0, ..., S_{n-1}) of pair encodings, S_0 most significant. The visitor
// returns false to stop early. n must be between 1 and 5.
void enumerate_frames(int n, const std::function<bool(const Frame&)>& visit);

enum class FrameStatus { Valid, Falsified, BudgetExceeded };

struct FrameResult {
  FrameStatus status = FrameStatus::Valid;
  VeltmanModel model;  // the falsifying valuation, when Falsified
  int world = -1;
};

// Exhaustive validity of f on one frame over all valuations of `letters`
// (2^(|letters|*n) of them, enumerated with the last letter fastest); gives
// up with BudgetExceeded instead of running past max_valuations.
FrameResult frame_valid(const Frame& fr, const FormulaPtr& f,
                        const std::vector<std::string>& letters,
                        long long max_valuations = 1LL << 22);

enum class SearchStatus { Found, ValidWithinBudget, BudgetExceeded };

struct SearchResult {
  SearchStatus status = SearchStatus::ValidWithinBudget;
  VeltmanModel model;  // meaningful only when status == Found
  int world = -1;
};

// Enumeration-least falsifying (model, world) for f: by world count, then
// frame order as above, then valuation order, then lowest world index.
// BudgetExceeded when the formula has more letters than the budget allows or
// the requested world count exceeds what enumerate_frames supports, so a
// completed pass always means "no countermodel in the whole budgeted space".
SearchResult countermodel_search(const FormulaPtr& f, const SearchBudget& budget);

}  // namespace fil
