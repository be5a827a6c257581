#pragma once

// Command-line front end. Every subcommand produces an Outcome (exit code,
// JSON result records, and a flat table for CSV/text rendering); run() parses
// arguments, dispatches, and renders.
//
// Exit codes: 0 verified, 1 conjecture mismatch, 2 usage error, 3 resource cap.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "periodscape/fibclass.hpp"
#include "periodscape/landscape.hpp"
#include "periodscape/minima.hpp"
#include "periodscape/polynomials.hpp"
#include "periodscape/predict.hpp"
#include "periodscape/serialize.hpp"

namespace periodscape::cli {

namespace exit_code {
inline constexpr int verified = 0;
inline constexpr int mismatch = 1;
inline constexpr int usage = 2;
inline constexpr int resource = 3;
}  // namespace exit_code

enum class Format { json, csv, text };

inline const char* to_string(Format f) {
  switch (f) {
    case Format::json: return "json";
    case Format::csv: return "csv";
    case Format::text: return "text";
  }
  return "json";
}

inline Format parse_format(const std::string& s) {
  if (s == "json") return Format::json;
  if (s == "csv") return Format::csv;
  if (s == "text") return Format::text;
  throw std::invalid_argument("unknown output format '" + s + "'");
}

struct RunConfig {
  std::uint64_t state_cap = std::uint64_t{1} << 27;
  std::uint64_t keep_cycles_cap = std::uint64_t{1} << 20;
  std::uint64_t rng_seed = 42;
  Format output_format = Format::json;
  std::string output_path;
  std::size_t jobs = 1;

  EnumerationLimits limits() const { return {state_cap, keep_cycles_cap}; }

  json to_json() const {
    return {{"state_cap", state_cap},
            {"keep_cycles_cap", keep_cycles_cap},
            {"rng_seed", rng_seed},
            {"output_format", cli::to_string(output_format)},
            {"jobs", jobs}};
  }

  void validate() const {
    if (state_cap == 0 || keep_cycles_cap == 0) throw std::invalid_argument("caps must be positive");
    if (jobs == 0) throw std::invalid_argument("jobs must be at least 1");
  }
};

// Fields of a JSON config file override defaults; command-line flags win.
inline void apply_config_file(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw std::invalid_argument("config file " + path + ": " + e.what());
  }
  for (const auto& [key, value] : j.items()) {
    if (key == "state_cap") cfg.state_cap = value.get<std::uint64_t>();
    else if (key == "keep_cycles_cap") cfg.keep_cycles_cap = value.get<std::uint64_t>();
    else if (key == "rng_seed") cfg.rng_seed = value.get<std::uint64_t>();
    else if (key == "output_format") cfg.output_format = parse_format(value.get<std::string>());
    else if (key == "output_path") cfg.output_path = value.get<std::string>();
    else if (key == "jobs") cfg.jobs = value.get<std::size_t>();
    else throw std::invalid_argument("unknown config field '" + key + "'");
  }
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct Outcome {
  int code = exit_code::verified;
  json results = json::array();
  Table table;
  std::vector<std::string> notes;
};

// ---------------------------------------------------------------- parsing

inline std::int64_t parse_int(const std::string& s) {
  std::size_t used = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("not an integer: '" + s + "'");
  }
  if (used != s.size()) throw std::invalid_argument("not an integer: '" + s + "'");
  return v;
}

// "a..b", "a,b,c" or a single integer.
inline std::vector<std::int64_t> parse_range(const std::string& spec) {
  if (spec.empty()) throw std::invalid_argument("empty range");
  std::vector<std::int64_t> out;
  if (const auto dots = spec.find(".."); dots != std::string::npos) {
    const auto lo = parse_int(spec.substr(0, dots));
    const auto hi = parse_int(spec.substr(dots + 2));
    if (lo > hi) throw std::invalid_argument("empty range " + spec);
    if (hi - lo > 10'000'000) throw std::invalid_argument("range " + spec + " is too long");
    for (auto v = lo; v <= hi; ++v) out.push_back(v);
    return out;
  }
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_int(item));
  return out;
}

inline std::vector<std::uint64_t> parse_positive_range(const std::string& spec, const char* what) {
  std::vector<std::uint64_t> out;
  for (auto v : parse_range(spec)) {
    if (v < 1) throw std::invalid_argument(std::string(what) + " must be positive");
    out.push_back(static_cast<std::uint64_t>(v));
  }
  return out;
}

// phi:N, pow:N, fib, parity, rec:r1,...,rk, or monic coefficients from the
// leading term down ("1,-1,-1" is x^2 - x - 1).
inline Recurrence parse_poly(const std::string& spec) {
  const auto arg = [&](std::size_t prefix) {
    const auto v = parse_int(spec.substr(prefix));
    if (v < 1) throw std::invalid_argument("index in '" + spec + "' must be positive");
    return static_cast<std::uint64_t>(v);
  };
  if (spec == "fib") return fibonacci_recurrence();
  if (spec == "parity") return parity_recurrence();
  if (spec.rfind("phi:", 0) == 0) return recurrence_from(cyclotomic(arg(4)));
  if (spec.rfind("pow:", 0) == 0) return recurrence_from(Polynomial::power_minus_one(arg(4)));
  if (spec.rfind("rec:", 0) == 0) {
    std::vector<std::int64_t> coeffs;
    for (auto v : parse_range(spec.substr(4))) coeffs.push_back(v);
    return Recurrence(std::move(coeffs));
  }
  std::vector<std::int64_t> high_first;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) high_first.push_back(parse_int(item));
  if (high_first.size() < 2) throw std::invalid_argument("unrecognised polynomial spec '" + spec + "'");
  return recurrence_from(Polynomial(std::vector<std::int64_t>(high_first.rbegin(), high_first.rend())));
}

// ---------------------------------------------------------------- rendering

inline std::string fmt_double(double v, int precision = 8) {
  std::ostringstream os;
  os << std::setprecision(precision) << v;
  return os.str();
}

inline std::string spectrum_text(const Spectrum& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& [len, n] : s) {
    out += (first ? "" : ", ") + std::to_string(len) + ":" + std::to_string(n);
    first = false;
  }
  return out + "}";
}

inline void add_spectrum_rows(Table& t, const Spectrum& s) {
  t.header = {"length", "count"};
  for (const auto& [len, n] : s) t.rows.push_back({std::to_string(len), std::to_string(n)});
}

inline std::string render(const std::string& command, const RunConfig& cfg, const Outcome& o) {
  std::ostringstream os;
  switch (cfg.output_format) {
    case Format::json: {
      const json doc = {{"command", command}, {"config", cfg.to_json()}, {"results", o.results}};
      os << doc.dump(2) << '\n';
      break;
    }
    case Format::csv: {
      const auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
        os << '\n';
      };
      line(o.table.header);
      for (const auto& r : o.table.rows) line(r);
      break;
    }
    case Format::text: {
      std::vector<std::size_t> width(o.table.header.size(), 0);
      for (std::size_t i = 0; i < width.size(); ++i) width[i] = o.table.header[i].size();
      for (const auto& r : o.table.rows)
        for (std::size_t i = 0; i < r.size() && i < width.size(); ++i) width[i] = std::max(width[i], r[i].size());
      const auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i)
          os << (i ? "  " : "") << std::setw(static_cast<int>(width[i])) << cells[i];
        os << '\n';
      };
      line(o.table.header);
      for (const auto& r : o.table.rows) line(r);
      for (const auto& n : o.notes) os << n << '\n';
      break;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------- guards

inline json error_record(const std::string& status, const std::exception& e) {
  return {{"status", status}, {"message", e.what()}};
}

// Maps domain exceptions to their structured outcome and exit code.
inline Outcome guarded(const std::function<Outcome()>& body, std::ostream& err) {
  Outcome o;
  const auto fail = [&](int code, json record, const std::exception& e) {
    err << "error: " << e.what() << '\n';
    o.code = code;
    o.results = json::array({std::move(record)});
    o.table.header = {"status", "message"};
    o.table.rows = {{o.results[0]["status"].get<std::string>(), e.what()}};
  };
  try {
    return body();
  } catch (const integrality_violation& e) {
    auto rec = error_record("integrality_violation", e);
    rec["formula"] = e.formula();
    rec["numerator"] = e.numerator();
    rec["denominator"] = e.denominator();
    fail(exit_code::mismatch, std::move(rec), e);
  } catch (const uncovered_case& e) {
    err << "note: " << e.what() << '\n';
    o.code = exit_code::verified;
    o.results = json::array({error_record("uncovered_case", e)});
    o.table.header = {"status", "message"};
    o.table.rows = {{"uncovered_case", e.what()}};
  } catch (const classification_violation& e) {
    fail(exit_code::mismatch, error_record("classification_violation", e), e);
  } catch (const lift_mismatch& e) {
    fail(exit_code::mismatch, error_record("lift_mismatch", e), e);
  } catch (const cap_exceeded& e) {
    fail(exit_code::resource, error_record("cap_exceeded", e), e);
  } catch (const matrix_order_cap_exceeded& e) {
    fail(exit_code::resource, error_record("cap_exceeded", e), e);
  } catch (const overflow_error& e) {
    fail(exit_code::resource, error_record("overflow", e), e);
  } catch (const non_invertible& e) {
    fail(exit_code::usage, error_record("non_invertible", e), e);
  } catch (const not_divisor& e) {
    fail(exit_code::usage, error_record("not_divisor", e), e);
  } catch (const std::invalid_argument& e) {
    fail(exit_code::usage, error_record("usage_error", e), e);
  } catch (const std::exception& e) {
    fail(exit_code::usage, error_record("error", e), e);
  }
  return o;
}

// ---------------------------------------------------------------- sweeps

enum class Status { match, mismatch, uncovered, skipped, special };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::match: return "match";
    case Status::mismatch: return "mismatch";
    case Status::uncovered: return "uncovered";
    case Status::skipped: return "skipped_cap";
    case Status::special: return "special";
  }
  return "?";
}

struct InstanceResult {
  Status status = Status::match;
  json record;
  std::string detail;
};

struct Instance {
  std::string label;
  std::function<InstanceResult()> run;
};

// Runs every instance (in parallel when jobs > 1) and collects results in
// instance order. Cap and overflow failures skip the instance; conjecture
// failures become mismatch records.
inline std::vector<InstanceResult> run_instances(const std::vector<Instance>& instances, std::size_t jobs) {
  std::vector<InstanceResult> results(instances.size());
  const auto one = [&](std::size_t i) {
    const auto& inst = instances[i];
    auto& res = results[i];
    const auto skipped = [&](const std::exception& e, const char* kind) {
      res.status = Status::skipped;
      res.record = {{"instance", inst.label}, {"status", to_string(Status::skipped)}, {"reason", kind}, {"message", e.what()}};
      res.detail = e.what();
    };
    const auto counterexample = [&](const std::exception& e, const char* kind) {
      res.status = Status::mismatch;
      res.record = {{"instance", inst.label}, {"status", "mismatch"}, {"kind", kind}, {"message", e.what()}};
      res.detail = e.what();
    };
    try {
      res = inst.run();
      if (!res.record.contains("instance")) {
        json rec = {{"instance", inst.label}};
        for (auto& [k, v] : res.record.items()) rec[k] = v;
        res.record = std::move(rec);
      }
    } catch (const cap_exceeded& e) {
      skipped(e, "cap_exceeded");
    } catch (const matrix_order_cap_exceeded& e) {
      skipped(e, "cap_exceeded");
    } catch (const overflow_error& e) {
      skipped(e, "overflow");
    } catch (const integrality_violation& e) {
      counterexample(e, "integrality_violation");
      res.record["formula"] = e.formula();
      res.record["numerator"] = e.numerator();
      res.record["denominator"] = e.denominator();
    } catch (const classification_violation& e) {
      counterexample(e, "classification_violation");
    } catch (const lift_mismatch& e) {
      counterexample(e, "lift_mismatch");
    }
  };

  jobs = std::max<std::size_t>(1, std::min(jobs, instances.size()));
  if (jobs == 1) {
    for (std::size_t i = 0; i < instances.size(); ++i) one(i);
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(jobs);
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < jobs; ++t)
    pool.emplace_back([&, t] {
      try {
        for (auto i = next++; i < instances.size(); i = next++) one(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

inline Outcome sweep_outcome(const std::vector<Instance>& instances, const std::vector<InstanceResult>& results) {
  Outcome o;
  o.table.header = {"instance", "status", "detail"};
  bool any_mismatch = false;
  bool any_skipped = false;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    any_mismatch |= r.status == Status::mismatch;
    any_skipped |= r.status == Status::skipped;
    o.results.push_back(r.record);
    o.table.rows.push_back({instances[i].label, to_string(r.status), r.detail});
  }
  o.code = any_mismatch ? exit_code::mismatch : any_skipped ? exit_code::resource : exit_code::verified;
  std::size_t matched = 0;
  for (const auto& r : results) matched += r.status == Status::match;
  o.notes.push_back(std::to_string(matched) + " of " + std::to_string(results.size()) + " instances matched");
  return o;
}

inline InstanceResult from_report(const VerificationReport& rep) {
  InstanceResult r;
  r.status = rep.match ? Status::match : Status::mismatch;
  r.record = to_json(rep);
  r.detail = rep.match ? spectrum_text(rep.observed)
                       : "predicted " + spectrum_text(rep.predicted) + " observed " + spectrum_text(rep.observed);
  return r;
}

// ---------------------------------------------------------------- commands

inline Outcome cmd_landscape(const std::string& poly, std::uint64_t m, bool keep_cycles, bool digits,
                             const RunConfig& cfg) {
  const auto r = parse_poly(poly);
  const auto land = enumerate_landscape(r, m, keep_cycles, cfg.limits());
  Outcome o;
  o.results.push_back(to_json(land, digits));
  add_spectrum_rows(o.table, land.spectrum);
  o.notes.push_back("total " + std::to_string(land.cycle_count()) + " cycles over " +
                    std::to_string(land.state_count()) + " states");
  if (land.cycles && digits && m <= 10) {
    std::string line = "cycles:";
    for (const auto& c : *land.cycles) line += " " + to_digit_string(c);
    o.notes.push_back(line);
  }
  return o;
}

inline Outcome cmd_pisano(const std::string& range, const RunConfig& cfg) {
  Outcome o;
  o.table.header = {"m", "pisano"};
  for (auto m : parse_positive_range(range, "modulus")) {
    const auto pi = pisano_period(m, cfg.limits());
    o.results.push_back({{"m", m}, {"pisano", pi}});
    o.table.rows.push_back({std::to_string(m), std::to_string(pi)});
  }
  return o;
}

struct FamilyArgs {
  std::string p = "";
  std::string j = "1";
  std::string n = "";
  std::string m = "";
  std::uint64_t p_max = 200;
  unsigned k_max = 2;
  std::string poly = "fib";
  bool digits = false;
};

inline SpectrumPrediction predict_family(const std::string& family, std::uint64_t p, unsigned j, std::uint64_t n,
                                         std::uint64_t m) {
  if (family == "phi_p") return predict_phi_p(p, m);
  if (family == "phi_2p") return predict_phi_2p(p, m);
  if (family == "phi_pj") return predict_phi_pj(p, j, m);
  if (family == "pow") return predict_power_cycle(n, m);
  throw std::invalid_argument("unknown prediction family '" + family + "'");
}

inline Recurrence family_recurrence(const std::string& family, std::uint64_t p, unsigned j, std::uint64_t n) {
  if (family == "phi_p") return recurrence_from(cyclotomic(p));
  if (family == "phi_2p") return recurrence_from(cyclotomic(checked_mul<std::uint64_t>(2, p)));
  if (family == "phi_pj") return recurrence_from(cyclotomic(checked_pow<std::uint64_t>(p, j)));
  if (family == "pow") return recurrence_from(Polynomial::power_minus_one(n));
  throw std::invalid_argument("unknown prediction family '" + family + "'");
}

inline std::string family_label(const std::string& family, std::uint64_t p, unsigned j, std::uint64_t n,
                                std::uint64_t m) {
  std::string base;
  if (family == "phi_p") base = "Phi_" + std::to_string(p);
  else if (family == "phi_2p") base = "Phi_" + std::to_string(2 * p);
  else if (family == "phi_pj") base = "Phi_" + std::to_string(p) + "^" + std::to_string(j);
  else base = "x^" + std::to_string(n) + "-1";
  return base + " mod " + std::to_string(m);
}

inline Outcome cmd_predict(const std::string& family, const FamilyArgs& a) {
  const bool uses_n = family == "pow";
  const auto p = uses_n ? 0 : static_cast<std::uint64_t>(parse_int(a.p));
  const auto n = uses_n ? static_cast<std::uint64_t>(parse_int(a.n)) : 0;
  const auto j = static_cast<unsigned>(parse_int(a.j));
  const auto m = static_cast<std::uint64_t>(parse_int(a.m));
  if ((uses_n ? a.n : a.p).empty() || a.m.empty()) throw std::invalid_argument("predict needs its family parameters and --m");
  const auto pred = predict_family(family, p, j, n, m);
  Outcome o;
  auto rec = to_json(pred);
  rec["instance"] = family_label(family, p, j, n, m);
  rec["status"] = "predicted";
  o.results.push_back(std::move(rec));
  add_spectrum_rows(o.table, pred.by_length);
  o.notes.push_back(pred.source + ": total " + std::to_string(pred.total));
  return o;
}

inline std::vector<Instance> family_instances(const std::string& family, const FamilyArgs& a, const RunConfig& cfg) {
  std::vector<Instance> out;
  const auto limits = cfg.limits();
  const bool uses_n = family == "pow";
  if ((uses_n ? a.n : a.p).empty() || a.m.empty())
    throw std::invalid_argument("verify " + family + " needs " + (uses_n ? "--n" : "--p") + " and --m");
  const auto firsts = parse_positive_range(uses_n ? a.n : a.p, uses_n ? "n" : "p");
  const auto js = family == "phi_pj" ? parse_positive_range(a.j, "j") : std::vector<std::uint64_t>{1};
  const auto ms = parse_positive_range(a.m, "modulus");
  for (auto first : firsts)
    for (auto jj : js)
      for (auto m : ms) {
        const auto p = uses_n ? 0 : first;
        const auto n = uses_n ? first : 0;
        const auto j = static_cast<unsigned>(jj);
        if (!uses_n && (!is_prime(p) || (family == "phi_2p" && p == 2)))
          throw std::invalid_argument(std::to_string(p) + " is not a valid prime for " + family);
        out.push_back({family_label(family, p, j, n, m), [=] {
                         const auto rec = family_recurrence(family, p, j, n);
                         try {
                           const auto pred = predict_family(family, p, j, n, m);
                           const auto land = enumerate_landscape(rec, m, false, limits);
                           return from_report(verify_prediction(pred, land, family_label(family, p, j, n, m)));
                         } catch (const uncovered_case& e) {
                           const auto land = enumerate_landscape(rec, m, false, limits);
                           InstanceResult r;
                           r.status = Status::uncovered;
                           r.record = {{"status", "uncovered"},
                                       {"message", e.what()},
                                       {"observed", to_json(land.spectrum)},
                                       {"observed_total", land.cycle_count()}};
                           r.detail = "no prediction; observed " + spectrum_text(land.spectrum);
                           return r;
                         }
                       }});
      }
  return out;
}

inline Outcome cmd_verify(const std::string& family, const FamilyArgs& a, const RunConfig& cfg) {
  std::vector<Instance> instances;
  const auto limits = cfg.limits();
  if (family == "phi_p" || family == "phi_2p" || family == "phi_pj" || family == "pow") {
    instances = family_instances(family, a, cfg);
  } else if (family == "fib_prime") {
    for (std::uint64_t p = 2; p <= a.p_max; ++p) {
      if (!is_prime(p)) continue;
      instances.push_back({"F mod " + std::to_string(p), [=] {
                             const auto c = classify_prime(p, limits);
                             InstanceResult r;
                             r.record = to_json(c);
                             r.status = !c.has_prediction() ? Status::special : c.matches() ? Status::match : Status::mismatch;
                             if (c.class_label == PrimeClass::B1 || c.class_label == PrimeClass::B2) {
                               const auto cong = congruence_class_check(p, limits);
                               r.record["congruence"] = to_json(cong);
                               if (!cong.holds) r.status = Status::mismatch;
                             }
                             r.record["status"] = to_string(r.status);
                             r.detail = std::string(to_string(c.class_label)) + " " + spectrum_text(c.observed_spectrum);
                             return r;
                           }});
    }
  } else if (family == "self_similarity") {
    if (a.p.empty()) throw std::invalid_argument("verify self_similarity needs --p");
    for (auto p : parse_positive_range(a.p, "p")) {
      if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
      const auto k_max = a.k_max;
      instances.push_back({"F mod " + std::to_string(p) + "^1.." + std::to_string(k_max), [=] {
                             const auto rep = check_self_similarity(p, k_max, limits);
                             InstanceResult r;
                             r.status = rep.exempt() ? Status::special
                                        : rep.holds()  ? Status::match
                                                       : Status::mismatch;
                             r.record = to_json(rep);
                             r.detail = rep.levels.empty() ? "" : spectrum_text(rep.levels.back().spectrum);
                             return r;
                           }});
    }
  } else if (family == "weights") {
    if (a.m.empty()) throw std::invalid_argument("verify weights needs --m");
    const auto r = parse_poly(a.poly);
    for (auto m : parse_positive_range(a.m, "modulus"))
      for (auto d : divisors(m))
        instances.push_back({"weights " + std::to_string(m) + " -> " + std::to_string(d), [=] {
                               const auto rep = check_weight_preservation(m, d, r, limits);
                               InstanceResult res;
                               res.status = rep.conserved() ? Status::match : Status::mismatch;
                               res.record = to_json(rep, a.digits);
                               res.detail = std::to_string(rep.groups.size()) + " groups";
                               return res;
                             }});
  } else if (family == "chiral") {
    if (a.m.empty()) throw std::invalid_argument("verify chiral needs --m");
    const auto r = parse_poly(a.poly);
    for (auto m : parse_positive_range(a.m, "modulus"))
      instances.push_back({"chiral " + a.poly + " mod " + std::to_string(m), [=] {
                             const auto rep = check_chiral(r, m, limits);
                             InstanceResult res;
                             res.status = rep.holds() ? Status::match : Status::mismatch;
                             res.record = to_json(rep);
                             res.detail = spectrum_text(rep.spectrum) +
                                          (rep.reversal_checked ? "" : " (reversal not checked: above keep-cycles cap)");
                             return res;
                           }});
  } else {
    throw std::invalid_argument("unknown verify family '" + family + "'");
  }
  return sweep_outcome(instances, run_instances(instances, cfg.jobs));
}

inline Outcome cmd_classify(const std::string& range, const RunConfig& cfg) {
  Outcome o;
  o.table.header = {"p", "class", "alpha", "pisano", "zeros", "predicted_total", "status"};
  bool bad = false;
  const bool is_span = range.find("..") != std::string::npos;
  for (auto p : parse_positive_range(range, "p")) {
    if (!is_prime(p)) {
      if (is_span) continue;
      throw std::invalid_argument(std::to_string(p) + " is not prime");
    }
    const auto c = classify_prime(p, cfg.limits());
    o.results.push_back(to_json(c));
    bad |= !c.matches();
    o.table.rows.push_back({std::to_string(p), to_string(c.class_label), c.alpha ? std::to_string(*c.alpha) : "-",
                            std::to_string(c.pisano), std::to_string(c.zero_count),
                            c.has_prediction() ? std::to_string(c.predicted_total) : "-",
                            o.results.back()["status"].get<std::string>()});
  }
  o.code = bad ? exit_code::mismatch : exit_code::verified;
  return o;
}

inline std::string cycle_text(const Cycle& c) {
  if (c.modulus() <= 10) return to_digit_string(c);
  std::string s = "[";
  for (std::size_t i = 0; i < c.length(); ++i) s += (i ? " " : "") + std::to_string(c.residues()[i]);
  return s + "]";
}

inline Outcome cmd_weights(std::uint64_t m, std::int64_t d, const std::string& poly, bool digits,
                           const RunConfig& cfg) {
  const auto r = parse_poly(poly);
  std::vector<std::uint64_t> ds;
  if (d > 0) ds.push_back(static_cast<std::uint64_t>(d));
  else ds = divisors(m);
  Outcome o;
  o.table.header = {"d", "base", "base_weight", "lifted", "lifted_weight", "conserved"};
  bool ok = true;
  for (auto dd : ds) {
    const auto rep = check_weight_preservation(m, dd, r, cfg.limits());
    ok &= rep.conserved();
    o.results.push_back(to_json(rep, digits));
    for (const auto& g : rep.groups) {
      std::string lifted;
      for (const auto& c : g.lifted) lifted += (lifted.empty() ? "" : " ") + cycle_text(c);
      o.table.rows.push_back({std::to_string(dd), cycle_text(g.base), g.base_weight.str(), lifted,
                              g.lifted_weight.str(), g.conserved() ? "yes" : "no"});
    }
  }
  o.code = ok ? exit_code::verified : exit_code::mismatch;
  return o;
}

inline Outcome cmd_chiral(const std::string& poly, const std::string& range, const RunConfig& cfg) {
  FamilyArgs a;
  a.poly = poly;
  a.m = range;
  return cmd_verify("chiral", a, cfg);
}

struct MinimaArgs {
  std::uint64_t samples = 1'000'000;
  std::string mode = "angle";
  std::int64_t box = 1000;
  std::string range;
  std::string recurrence = "fib";
  bool analytic_only = false;
  std::size_t shards = 8;
};

inline Outcome cmd_minima(const MinimaArgs& a, const RunConfig& cfg) {
  Outcome o;
  if (a.analytic_only) {
    const auto ns = parse_range(a.range.empty() ? "-40..41" : a.range);
    o.table.header = {"n", "P(n)", "P(1-n)", "symmetric"};
    bool symmetric = true;
    double sum = 0.0;
    for (auto n : ns) {
      const auto p = minima_probability(n);
      const auto q = minima_probability(1 - n);
      const bool ok = std::abs(p - q) <= 1e-12 && p >= 0.0;
      symmetric &= ok;
      sum += p;
      o.results.push_back({{"n", n}, {"P", p}, {"P_mirror", q}, {"symmetric", ok}});
      o.table.rows.push_back({std::to_string(n), fmt_double(p, 12), fmt_double(q, 12), ok ? "yes" : "no"});
    }
    const bool normalized = sum <= 1.0 + 1e-12 && (ns.front() > -40 || ns.back() < 41 || sum >= 1.0 - 1e-6);
    o.results.push_back({{"summary", true}, {"sum", sum}, {"symmetric", symmetric}, {"normalized", normalized}});
    o.notes.push_back("sum over range = " + fmt_double(sum, 15));
    o.code = symmetric && normalized ? exit_code::verified : exit_code::mismatch;
    return o;
  }

  SamplingMode mode;
  if (a.mode == "angle") mode.kind = SamplingKind::angle;
  else if (a.mode == "box") mode.kind = SamplingKind::integer_box;
  else throw std::invalid_argument("unknown sampling mode '" + a.mode + "'");
  mode.box_half_width = a.box;
  const auto r = parse_poly(a.recurrence);
  SimulationOptions opts;
  opts.shards = a.shards;
  opts.threads = cfg.jobs;
  const auto dist = simulate_minima(a.samples, mode, cfg.rng_seed, r, opts);

  o.table.header = {"n", "P", "P_hat", "se", "within_3se"};
  bool ok = true;
  for (auto n : parse_range(a.range.empty() ? "-6..7" : a.range)) {
    const auto p = minima_probability(n);
    const auto phat = dist.at(n);
    const auto se = standard_error(phat, dist.samples);
    const bool within = std::abs(p - phat) <= 3.0 * se;
    ok &= within;
    o.results.push_back({{"n", n}, {"P", p}, {"P_hat", phat}, {"se", se}, {"within_3se", within}});
    o.table.rows.push_back({std::to_string(n), fmt_double(p), fmt_double(phat), fmt_double(se), within ? "yes" : "no"});
  }
  o.notes.push_back(std::to_string(dist.samples) + " samples, mode " + a.mode + ", seed " + std::to_string(cfg.rng_seed));
  o.code = ok ? exit_code::verified : exit_code::mismatch;
  return o;
}

// ---------------------------------------------------------------- entry

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Period landscapes of integer linear recurrences modulo m", "periodscape"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "json";
  std::string config_path;
  RunConfig cfg;
  auto* fmt_opt = app.add_option("--format", format, "Output format: json, csv or text");
  auto* out_opt = app.add_option("--output,-o", cfg.output_path, "Write output to a file");
  app.add_option("--config", config_path, "JSON config file (flags take precedence)");
  auto* cap_opt = app.add_option("--state-cap", cfg.state_cap, "Largest state space m^k to enumerate");
  auto* keep_opt = app.add_option("--keep-cycles-cap", cfg.keep_cycles_cap, "Largest m^k for which explicit cycles are kept");
  auto* seed_opt = app.add_option("--seed", cfg.rng_seed, "Random seed");
  auto* jobs_opt = app.add_option("--jobs,-j", cfg.jobs, "Parallel workers");

  std::string poly;
  std::uint64_t modulus = 0;
  bool no_cycles = false;
  bool digits = false;
  auto* land = app.add_subcommand("landscape", "Enumerate the period landscape of a recurrence mod m");
  land->add_option("poly", poly, "phi:N, pow:N, fib, parity, rec:r1,..,rk or monic coefficients")->required();
  land->add_option("m", modulus, "Modulus")->required();
  land->add_flag("--no-cycles", no_cycles, "Report the spectrum only");
  land->add_flag("--digits", digits, "Render cycles as digit strings (m <= 10)");

  std::string family;
  FamilyArgs fa;
  auto* pred = app.add_subcommand("predict", "Closed-form period count for a recurrence family");
  pred->add_option("family", family, "phi_p, phi_2p, phi_pj or pow")->required();
  pred->add_option("--p", fa.p, "Prime p");
  pred->add_option("--j", fa.j, "Exponent j (phi_pj)");
  pred->add_option("--n", fa.n, "Order n (pow)");
  pred->add_option("--m", fa.m, "Modulus");

  auto* ver = app.add_subcommand("verify", "Compare predictions with brute-force enumeration over a sweep");
  ver->add_option("family", family,
                  "phi_p, phi_2p, phi_pj, pow, fib_prime, self_similarity, weights or chiral")->required();
  ver->add_option("--p", fa.p, "Primes (range spec)");
  ver->add_option("--j", fa.j, "Exponents (range spec)");
  ver->add_option("--n", fa.n, "Orders (range spec)");
  ver->add_option("--m", fa.m, "Moduli (range spec)");
  ver->add_option("--p-max", fa.p_max, "Largest prime for fib_prime");
  ver->add_option("--k-max", fa.k_max, "Largest exponent for self_similarity");
  ver->add_option("--poly", fa.poly, "Recurrence for weights and chiral");
  ver->add_flag("--digits", fa.digits, "Include digit strings for m <= 10");

  std::string prange;
  auto* cls = app.add_subcommand("classify", "Classify primes for the Fibonacci recurrence");
  cls->add_option("p", prange, "Primes (range spec)")->required();

  std::int64_t divisor = 0;
  std::string wpoly = "fib";
  auto* wts = app.add_subcommand("weights", "Weight conservation between m and its divisors");
  wts->add_option("--m", modulus, "Modulus")->required();
  wts->add_option("--d", divisor, "Single divisor (default: all)");
  wts->add_option("--poly", wpoly, "fib or parity");
  wts->add_flag("--digits", digits, "Include digit strings for m <= 10");

  std::string mrange;
  auto* chi = app.add_subcommand("chiral", "Reversal symmetry between a recurrence and its parity transform");
  chi->add_option("poly", poly, "Recurrence spec")->required();
  chi->add_option("--m", mrange, "Moduli (range spec)")->required();

  MinimaArgs ma;
  auto* mins = app.add_subcommand("minima", "Analytic vs sampled distribution of minimum positions");
  mins->add_option("--samples", ma.samples, "Number of samples");
  mins->add_option("--mode", ma.mode, "angle or box");
  mins->add_option("--box", ma.box, "Half-width of the integer box");
  mins->add_option("--range", ma.range, "Index range, e.g. -6..7");
  mins->add_option("--recurrence", ma.recurrence, "fib or parity");
  mins->add_option("--shards", ma.shards, "Independent RNG streams");
  mins->add_flag("--analytic-only", ma.analytic_only, "Symmetry and normalisation of P(n) only");

  auto* pis = app.add_subcommand("pisano", "Pisano periods");
  pis->add_option("m", mrange, "Moduli (range spec)")->required();

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_code::verified;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_code::verified;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::usage;
  }

  try {
    RunConfig flags = cfg;
    cfg = RunConfig{};
    if (!config_path.empty()) apply_config_file(cfg, config_path);
    if (*fmt_opt) cfg.output_format = parse_format(format);
    if (*out_opt) cfg.output_path = flags.output_path;
    if (*cap_opt) cfg.state_cap = flags.state_cap;
    if (*keep_opt) cfg.keep_cycles_cap = flags.keep_cycles_cap;
    if (*seed_opt) cfg.rng_seed = flags.rng_seed;
    if (*jobs_opt) cfg.jobs = flags.jobs;
    cfg.validate();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::usage;
  }

  std::string command;
  const auto outcome = guarded(
      [&]() -> Outcome {
        if (*land) return command = "landscape", cmd_landscape(poly, modulus, !no_cycles, digits, cfg);
        if (*pred) return command = "predict", cmd_predict(family, fa);
        if (*ver) return command = "verify", cmd_verify(family, fa, cfg);
        if (*cls) return command = "classify", cmd_classify(prange, cfg);
        if (*wts) return command = "weights", cmd_weights(modulus, divisor, wpoly, digits, cfg);
        if (*chi) return command = "chiral", cmd_chiral(poly, mrange, cfg);
        if (*mins) return command = "minima", cmd_minima(ma, cfg);
        if (*pis) return command = "pisano", cmd_pisano(mrange, cfg);
        throw std::invalid_argument("no subcommand");
      },
      err);
  if (command.empty()) command = app.get_subcommands().empty() ? "" : app.get_subcommands().front()->get_name();

  const auto text = render(command, cfg, outcome);
  if (cfg.output_path.empty()) {
    out << text;
  } else {
    std::ofstream file(cfg.output_path);
    if (!file) {
      err << "error: cannot write " << cfg.output_path << '\n';
      return exit_code::usage;
    }
    file << text;
  }
  return outcome.code;
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, out, err);
}

}  // namespace periodscape::cli
