// fil :: CLI — check / prove / series / erase / search subcommands
#include "fil/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fil/proof.hpp"
#include "fil/series.hpp"
#include "fil/synth.hpp"
#include "fil/veltman.hpp"

namespace fil::cli {

namespace {

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// One per-item report line; records mode emits line-delimited JSON.
void emit(bool records, const std::string& item, const std::string& status, double ms,
          const std::string& detail, const std::string& digest) {
  if (records) {
    nlohmann::json j;
    j["item"] = item;
    j["status"] = status;
    j["ms"] = ms;
    j["detail"] = detail;
    j["digest"] = digest;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << item << ": " << status;
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << "\n";
  }
}

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream buf;
  buf << in.rdbuf();
  out = buf.str();
  return true;
}

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out << text;
  out.flush();
  return static_cast<bool>(out);
}

std::string render_judgment(const Judgment& j) {
  std::string s = "[";
  for (std::size_t i = 0; i < j.context.size(); ++i) {
    if (i) s += ", ";
    s += print(j.context[i]);
  }
  s += "] |- " + print(j.conclusion);
  return s;
}

int do_check(const std::vector<std::string>& paths, bool ilp, int jobs, bool records) {
  struct Res {
    std::string status, detail, digest;
    double ms = 0;
    int exit = 0;
  };
  std::vector<Res> rs(paths.size());
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= paths.size()) return;
      Res& r = rs[i];
      auto t0 = Clock::now();
      std::string text;
      if (!read_file(paths[i], text)) {
        r = {"error", "cannot read file", hex64(fnv1a64("")), ms_since(t0), 2};
        continue;
      }
      r.digest = hex64(fnv1a64(text));
      try {
        Derivation d = parse_derivation(text, ilp ? Mode::ILP : Mode::FIL);
        CheckReport rep = check(d);
        if (rep.accepted) {
          r.status = "accepted";
          r.detail = render_judgment(*rep.theorem);
        } else {
          const LineError& e = rep.errors.front();
          r.status = "rejected";
          r.detail = e.code + " at line " + std::to_string(e.index) + ": " + e.detail;
          r.exit = 1;
        }
      } catch (const ParseError& e) {
        r.status = "error";
        r.detail = "parse error at " + std::to_string(e.line) + ":" + std::to_string(e.col) +
                   ": " + e.what();
        r.exit = 2;
      } catch (const std::exception& e) {
        r.status = "error";
        r.detail = e.what();
        r.exit = 2;
      }
      r.ms = ms_since(t0);
    }
  };
  int nthreads = std::max(1, std::min(jobs, static_cast<int>(paths.size())));
  if (nthreads <= 1) {
    work();
  } else {
    std::vector<std::thread> ts;
    for (int t = 0; t < nthreads; ++t) ts.emplace_back(work);
    for (auto& t : ts) t.join();
  }
  int worst = 0;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    emit(records, paths[i], rs[i].status, rs[i].ms, rs[i].detail, rs[i].digest);
    worst = std::max(worst, rs[i].exit);
  }
  return worst;
}

int do_prove(const std::string& target, int n, bool n_given, const std::string& out,
             bool records) {
  const bool series = target == "slim" || target == "broad";
  if (series && !n_given) {
    std::cerr << "prove: --n is required for --target " << target << "\n";
    return 2;
  }
  if (!series && n_given) {
    std::cerr << "prove: --n applies only to slim/broad targets\n";
    return 2;
  }
  auto t0 = Clock::now();
  std::vector<std::pair<std::string, Derivation>> ds;  // (item suffix, derivation)
  try {
    if (target == "W") {
      ds.emplace_back("", derive_W());
    } else if (target == "M0") {
      ds.emplace_back("", derive_M0());
    } else if (target == "R") {
      ds.emplace_back("", derive_R());
    } else if (target == "slim") {
      ds.emplace_back("", derive_slim(n));
    } else if (target == "broad") {
      ds.emplace_back("", derive_broad(n));
    } else {
      auto pr = derive_j5_equivalence();
      ds.emplace_back("", std::move(pr.first));
      ds.emplace_back(".2", std::move(pr.second));
    }
  } catch (const std::domain_error& e) {
    std::cerr << "prove: " << e.what() << "\n";
    return 2;
  }
  std::string item = target;
  if (series) item += ":" + std::to_string(n);
  std::string digest = hex64(fnv1a64(item));
  // write-after-check: nothing leaves this function unless the kernel says yes
  for (auto& d : ds) {
    CheckReport rep = check(d.second);
    if (!rep.accepted) {
      emit(records, item + d.first, "rejected", ms_since(t0),
           "synthesized derivation failed the kernel check", digest);
      return 1;
    }
  }
  if (out.empty()) {
    if (records) {
      for (auto& d : ds)
        emit(true, item + d.first, "checked", ms_since(t0), format_derivation(d.second),
             digest);
    } else {
      bool first = true;
      for (auto& d : ds) {
        if (!first) std::cout << "% --- second derivation ---\n";
        first = false;
        std::cout << format_derivation(d.second);
      }
    }
    return 0;
  }
  for (auto& d : ds) {
    std::string path = out + d.first;
    if (!write_file(path, format_derivation(d.second))) {
      emit(records, item + d.first, "error", ms_since(t0), "cannot write " + path, digest);
      return 2;
    }
    emit(records, item + d.first, "written", ms_since(t0), path, digest);
  }
  return 0;
}

int do_series(const std::string& kind, int n, int upto, bool keep_top, bool records) {
  const bool uv = kind == "U" || kind == "V";
  if ((n < 0) == (upto < 0)) {
    std::cerr << "series: give exactly one of --n or --upto\n";
    return 2;
  }
  int lo, hi;
  if (n >= 0) {
    lo = hi = n;
  } else {
    lo = uv ? 1 : 0;
    hi = upto;
  }
  auto make = [&](int i) -> FormulaPtr {
    if (kind == "slim") return gen_slim(i, keep_top);
    if (kind == "broad") return gen_broad(i);
    if (kind == "original") return gen_original(i);
    if (kind == "X") return gen_X(i, keep_top);
    if (kind == "Y") return gen_Y(i);
    if (kind == "Z") return gen_Z(i, keep_top);
    if (kind == "U") return gen_U(i);
    return gen_V(i);
  };
  for (int i = lo; i <= hi; ++i) {
    std::string s;
    try {
      s = print(make(i));
    } catch (const std::domain_error& e) {
      std::cerr << "series: " << e.what() << "\n";
      return 2;
    }
    if (records)
      emit(true, kind + ":" + std::to_string(i), "printed", 0.0, s, hex64(fnv1a64(s)));
    else
      std::cout << s << "\n";
  }
  return 0;
}

int do_erase(const std::string& path, const std::string& out, bool records) {
  auto t0 = Clock::now();
  std::string text;
  if (!read_file(path, text)) {
    emit(records, path, "error", ms_since(t0), "cannot read file", hex64(fnv1a64("")));
    return 2;
  }
  std::string digest = hex64(fnv1a64(text));
  Derivation d;
  try {
    d = parse_derivation(text, Mode::FIL);
  } catch (const ParseError& e) {
    emit(records, path, "error", ms_since(t0),
         "parse error at " + std::to_string(e.line) + ":" + std::to_string(e.col) + ": " +
             e.what(),
         digest);
    return 2;
  } catch (const std::exception& e) {
    emit(records, path, "error", ms_since(t0), e.what(), digest);
    return 2;
  }
  CheckReport rep = check(d);
  if (!rep.accepted) {
    const LineError& e = rep.errors.front();
    emit(records, path, "rejected", ms_since(t0),
         e.code + " at line " + std::to_string(e.index) + ": " + e.detail, digest);
    return 1;
  }
  Derivation erased = to_ilp(d);
  CheckReport rep2 = check(erased);
  if (!rep2.accepted) {
    emit(records, path, "rejected", ms_since(t0), "erased derivation failed the ILP check",
         digest);
    return 1;
  }
  std::string etext = format_derivation(erased);
  if (out.empty()) {
    if (records)
      emit(true, path, "checked", ms_since(t0), etext, digest);
    else
      std::cout << etext;
    return 0;
  }
  if (!write_file(out, etext)) {
    emit(records, path, "error", ms_since(t0), "cannot write " + out, digest);
    return 2;
  }
  emit(records, path, "written", ms_since(t0), out, digest);
  return 0;
}

int do_search(const std::string& formula, int max_worlds, int max_letters, bool records) {
  auto t0 = Clock::now();
  FormulaPtr f;
  try {
    f = parse(formula);
  } catch (const ParseError& e) {
    std::cerr << "search: parse error at " << e.line << ":" << e.col << ": " << e.what()
              << "\n";
    return 2;
  }
  if (!interp_vars(f).empty()) {
    std::cerr << "search: the formula must be label-free\n";
    return 2;
  }
  if (max_worlds < 1) {
    std::cerr << "search: --max-worlds must be at least 1\n";
    return 2;
  }
  std::string canon = print(f);
  std::string digest = hex64(fnv1a64(canon));
  SearchBudget budget{max_worlds, max_letters};
  SearchResult r = countermodel_search(f, budget);
  switch (r.status) {
    case SearchStatus::Found: {
      std::string body = "% falsifies at world " + std::to_string(r.world) + "\n" +
                         format_model(r.model);
      if (records) {
        emit(true, canon, "found", ms_since(t0), body, digest);
      } else {
        std::cout << "% countermodel for: " << canon << "\n" << body;
      }
      return 0;
    }
    case SearchStatus::ValidWithinBudget:
      if (records)
        emit(true, canon, "valid-within-budget", ms_since(t0), "", digest);
      else
        std::cout << "VALID-WITHIN-BUDGET\n";
      return 0;
    case SearchStatus::BudgetExceeded:
      if (records)
        emit(true, canon, "budget-exceeded", ms_since(t0), "", digest);
      else
        std::cout << "BUDGET-EXCEEDED\n";
      return 1;
  }
  return 2;  // unreachable
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"proof workbench for the labeled interpretability logic FIL"};
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "report format")
      ->check(CLI::IsMember({"text", "records"}));
  int jobs = 1;
  app.add_option("--jobs", jobs, "worker threads for check")->check(CLI::PositiveNumber);

  auto* c_check = app.add_subcommand("check", "audit derivation files with the kernel");
  std::vector<std::string> paths;
  c_check->add_option("paths", paths, "derivation files")->required();
  bool ilp = false;
  c_check->add_flag("--ilp", ilp, "check in the label-free ILP mode");

  auto* c_prove = app.add_subcommand("prove", "synthesize a kernel-checked derivation");
  std::string target;
  c_prove->add_option("--target", target, "W, M0, R, slim, broad, or j5")
      ->required()
      ->check(CLI::IsMember({"W", "M0", "R", "slim", "broad", "j5"}));
  int pn = 0;
  auto* pn_opt = c_prove->add_option("--n", pn, "series index (slim/broad)");
  std::string pout;
  c_prove->add_option("--out", pout, "output path (stdout when omitted; j5 also writes .2)");

  auto* c_series = app.add_subcommand("series", "print series formulas");
  std::string kind;
  c_series->add_option("--kind,--series", kind, "slim, broad, original, X, Y, Z, U, or V")
      ->required()
      ->check(CLI::IsMember({"slim", "broad", "original", "X", "Y", "Z", "U", "V"}));
  int sn = -1, upto = -1;
  c_series->add_option("--n", sn, "single index");
  c_series->add_option("--upto", upto, "print the whole prefix up to this index");
  bool keep_top = false;
  c_series->add_flag("--keep-top", keep_top, "keep the vacuous &true in the slim base");

  auto* c_erase = app.add_subcommand("erase", "convert an accepted derivation to ILP mode");
  std::string epath;
  c_erase->add_option("path", epath, "derivation file")->required();
  std::string eout;
  c_erase->add_option("--out", eout, "output path (stdout when omitted)");

  auto* c_search = app.add_subcommand("search", "bounded Veltman countermodel search");
  std::string formula;
  c_search->add_option("--formula", formula, "label-free formula")->required();
  int max_worlds = 4, max_letters = 3;
  c_search->add_option("--max-worlds", max_worlds, "world budget (default 4)");
  c_search->add_option("--max-letters", max_letters, "letter budget (default 3)");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << "fil: " << e.what() << "\n";
    return 2;
  }

  const bool records = format == "records";
  if (*c_check) return do_check(paths, ilp, jobs, records);
  if (*c_prove) return do_prove(target, pn, pn_opt->count() > 0, pout, records);
  if (*c_series) return do_series(kind, sn, upto, keep_top, records);
  if (*c_erase) return do_erase(epath, eout, records);
  if (*c_search) return do_search(formula, max_worlds, max_letters, records);
  return 2;
}

}  // namespace fil::cli
