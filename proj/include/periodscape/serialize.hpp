#pragma once

// JSON views of the library's result types. Spectra are always arrays of
// {length, count} sorted by length.

#include <cstdint>
#include <string>

#include <json.hpp>

#include "periodscape/fibclass.hpp"
#include "periodscape/landscape.hpp"
#include "periodscape/minima.hpp"
#include "periodscape/predict.hpp"

namespace periodscape {

using json = nlohmann::ordered_json;

inline json to_json(const Spectrum& s) {
  json out = json::array();
  for (const auto& [len, n] : s) out.push_back({{"length", len}, {"count", n}});
  return out;
}

inline Spectrum spectrum_from_json(const json& j) {
  Spectrum s;
  for (const auto& e : j) {
    const auto len = e.at("length").get<std::uint64_t>();
    if (s.contains(len)) throw std::invalid_argument("duplicate length in spectrum");
    s[len] = e.at("count").get<std::uint64_t>();
  }
  return s;
}

inline json to_json(const Recurrence& r) {
  return {{"order", r.order()}, {"coeffs", r.coeffs()}, {"text", r.str()}};
}

inline json to_json(const Cycle& c, bool digits = false) {
  json out = {{"length", c.length()}, {"residues", c.residues()}};
  if (digits && c.modulus() <= 10) out["digits"] = to_digit_string(c);
  return out;
}

inline json to_json(const Landscape& l, bool digits = false) {
  json out = {{"modulus", l.modulus},
              {"recurrence", to_json(l.recurrence)},
              {"total", l.cycle_count()},
              {"spectrum", to_json(l.spectrum)}};
  if (l.cycles) {
    json cycles = json::array();
    for (const auto& c : *l.cycles) cycles.push_back(to_json(c, digits));
    out["cycles"] = std::move(cycles);
  }
  return out;
}

inline json to_json(const SpectrumPrediction& p) {
  return {{"source", p.source}, {"total", p.total}, {"spectrum", to_json(p.by_length)}};
}

inline json to_json(const VerificationReport& r) {
  json diffs = json::array();
  for (const auto& d : r.diffs)
    diffs.push_back({{"length", d.length}, {"predicted", d.predicted}, {"observed", d.observed}});
  return {{"instance", r.instance},
          {"status", r.match ? "match" : "mismatch"},
          {"source", r.source},
          {"predicted_total", r.predicted_total},
          {"observed_total", r.observed_total},
          {"predicted", to_json(r.predicted)},
          {"observed", to_json(r.observed)},
          {"diff", std::move(diffs)}};
}

inline json to_json(const PrimeClassification& c) {
  json out = {{"p", c.p},
              {"legendre5", c.legendre5},
              {"class", to_string(c.class_label)},
              {"alpha", c.alpha ? json(*c.alpha) : json(nullptr)},
              {"pisano", c.pisano},
              {"zero_count", c.zero_count}};
  if (c.has_prediction()) {
    out["predicted_total"] = c.predicted_total;
    out["predicted"] = to_json(c.predicted_spectrum);
  }
  out["observed"] = to_json(c.observed_spectrum);
  out["status"] = !c.has_prediction() ? "special" : (c.matches() ? "match" : "mismatch");
  return out;
}

inline json to_json(const CongruenceReport& r) {
  return {{"p", r.p},
          {"p_mod_20", r.residue20},
          {"constrained", r.constrained},
          {"observed_class", to_string(r.observed)},
          {"holds", r.holds}};
}

inline json to_json(const SelfSimilarityReport& r) {
  json levels = json::array();
  for (const auto& l : r.levels) levels.push_back({{"modulus", l.modulus}, {"spectrum", to_json(l.spectrum)}});
  json transitions = json::array();
  for (const auto& t : r.transitions) {
    json tj = {{"from", t.from},
               {"to", t.to},
               {"persists", t.persists},
               {"new_lengths", t.new_lengths},
               {"scaling", t.scaling ? json(*t.scaling) : json(nullptr)},
               {"middle_constant", t.middle_constant ? json(*t.middle_constant) : json(nullptr)},
               {"violations", t.violations}};
    transitions.push_back(std::move(tj));
  }
  return {{"p", r.p},
          {"class", to_string(r.class_label)},
          {"alpha", r.alpha ? json(*r.alpha) : json(nullptr)},
          {"status", r.exempt() ? "special" : r.holds() ? "match" : "mismatch"},
          {"levels", std::move(levels)},
          {"transitions", std::move(transitions)}};
}

inline json to_json(const WeightReport& r, bool digits = false) {
  json groups = json::array();
  for (const auto& g : r.groups) {
    json lifted = json::array();
    for (const auto& c : g.lifted) lifted.push_back(to_json(c, digits));
    groups.push_back({{"base", to_json(g.base, digits)},
                      {"base_weight", g.base_weight.str()},
                      {"lifted", std::move(lifted)},
                      {"lifted_weight", g.lifted_weight.str()},
                      {"conserved", g.conserved()}});
  }
  return {{"m", r.m}, {"d", r.d}, {"status", r.conserved() ? "match" : "mismatch"}, {"groups", std::move(groups)}};
}

inline json to_json(const ChiralReport& r) {
  json out = {{"m", r.m},
              {"recurrence", to_json(r.recurrence)},
              {"transform", to_json(r.transform)},
              {"spectrum", to_json(r.spectrum)},
              {"transform_spectrum", to_json(r.transform_spectrum)},
              {"spectra_equal", r.spectra_equal},
              {"reversal_checked", r.reversal_checked},
              {"reversal_bijective", r.reversal_checked ? json(r.reversal_bijective) : json(nullptr)},
              {"status", r.holds() ? "match" : "mismatch"}};
  if (r.first_unpaired) out["first_unpaired"] = to_json(*r.first_unpaired);
  return out;
}

}  // namespace periodscape
