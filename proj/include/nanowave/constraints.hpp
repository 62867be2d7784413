#pragma once

#include <string>
#include <vector>

#include "nanowave/config.hpp"

namespace nanowave {

// Machine-checked mission requirements and budget arithmetic. Thresholds and
// budget tables live in data files so the checkers stay reusable.

enum class Comparison { le, ge, eq };

struct Requirement {
  std::string name;  // mission-config key this threshold applies to
  std::string tier;  // requirement tier, e.g. "science" or "interference"
  Comparison op = Comparison::le;
  double value = 0.0;
  std::string unit;  // must match the config entry's unit exactly
  bool soft = false;  // operationalized "much less than" headroom; reported
  std::string note;
};

struct RequirementSet {
  std::vector<Requirement> items;

  // Parses [requirement] sections with keys name, tier, op (le|ge|eq),
  // value (with unit), soft (true|false), note. Duplicate (tier, name)
  // pairs are rejected.
  static RequirementSet load(const std::string& path);

  std::vector<const Requirement*> tier(const std::string& tier_name) const;
  std::vector<std::string> tiers() const;  // distinct tier names, file order
};

enum class CheckStatus { pass, fail, unknown };

struct RequirementCheck {
  const Requirement* requirement = nullptr;
  CheckStatus status = CheckStatus::unknown;
  bool has_actual = false;
  double actual = 0.0;
  double margin = 0.0;  // signed headroom in requirement units; >= 0 passes
};

struct RequirementReport {
  std::string tier;
  std::vector<RequirementCheck> checks;  // one per requirement in the tier
  int n_pass = 0, n_fail = 0, n_unknown = 0;
  bool all_pass = false;  // unknown items count as not passing
};

// Returns the [mission] section of a key-value file.
ConfigSection load_mission_config(const std::string& path);

// Evaluates every requirement of the tier against the mission config.
// Missing keys are reported unknown; a unit mismatch is a hard error.
RequirementReport check_requirements(const ConfigSection& mission, const RequirementSet& reqs,
                                     const std::string& tier);

// Largest cavity finesse compatible with staying on resonance while the
// cavity length drifts by rel_length_stability * length:
// F_max = pi * wavelength / (2 * rel_length_stability * length).
double finesse_limit(double wavelength, double rel_length_stability, double cavity_length);

struct BudgetRow {
  std::string name;
  std::string kind;  // item | optional | subtotal | total | info
  double cbe = 0.0;  // current best estimate
  bool has_margin = false;
  double margin = 0.0;  // maturity margin as a fraction of CBE
  double stated = 0.0;  // the value printed in the source table
  std::vector<std::string> sum_of;  // row names this row is declared to sum
  std::string label;                // margin label as printed, e.g. "30% avg"
  std::string note;
};

struct BudgetTable {
  std::string source;
  std::vector<BudgetRow> rows;

  // CSV columns: name,kind,cbe,margin_percent,stated,sum_of,label,note.
  // margin_percent may be empty (no margin arithmetic for that row);
  // sum_of is a semicolon-separated list of row names.
  static BudgetTable load(const std::string& path);
  const BudgetRow* find(const std::string& name) const;
};

struct BudgetRowCheck {
  const BudgetRow* row = nullptr;
  bool margin_checked = false;
  double recomputed = 0.0;  // cbe * (1 + margin)
  bool margin_ok = true;
  bool sum_checked = false;
  double cbe_sum = 0.0;
  double stated_sum = 0.0;
  bool sum_cbe_ok = true;
  bool sum_stated_ok = true;
};

struct BudgetReport {
  std::vector<BudgetRowCheck> checks;
  double tolerance = 0.5;
  bool rows_ok = false;    // every margin recomputation within tolerance
  bool totals_ok = false;  // every declared sum within tolerance
};

// Recomputes cbe*(1+margin) for every row with a margin and re-adds every
// declared sum; mismatches beyond the tolerance are flagged. Sum mismatches
// are reported separately so callers can treat them as warnings.
BudgetReport check_budget(const BudgetTable& table, double tolerance = 0.5);

}  // namespace nanowave
