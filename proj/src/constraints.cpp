#include "nanowave/constraints.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <utility>

#include "nanowave/constants.hpp"
#include "nanowave/csv.hpp"
#include "nanowave/errors.hpp"

namespace nanowave {

namespace {

Comparison parse_comparison(const std::string& text, const std::string& path, int line) {
  if (text == "le") return Comparison::le;
  if (text == "ge") return Comparison::ge;
  if (text == "eq") return Comparison::eq;
  throw parse_error(path, line, "comparison must be le, ge, or eq, got '" + text + "'");
}

bool parse_flag(const std::string& text, const std::string& path, int line) {
  if (text == "true" || text == "yes" || text == "1") return true;
  if (text == "false" || text == "no" || text == "0") return false;
  throw parse_error(path, line, "flag must be true or false, got '" + text + "'");
}

}  // namespace

RequirementSet RequirementSet::load(const std::string& path) {
  KeyValueFile file = KeyValueFile::parse_file(path);
  RequirementSet set;
  std::set<std::pair<std::string, std::string>> seen;
  for (const ConfigSection* secp : file.all("requirement")) {
    const ConfigSection& sec = *secp;
    Requirement req;
    req.name = sec.text("name");
    req.tier = sec.text("tier");
    req.op = parse_comparison(sec.text("op"), path, sec.line);
    const ConfigEntry* value = sec.find("value");
    if (!value) throw parse_error(path, sec.line, "requirement needs a value");
    if (!value->has_number)
      throw parse_error(path, value->line, "requirement value must be numeric");
    req.value = value->number;
    req.unit = value->unit;
    req.soft = sec.find("soft") ? parse_flag(sec.text("soft"), path, sec.line) : false;
    req.note = sec.text_or("note", "");
    if (!seen.insert({req.tier, req.name}).second)
      throw parse_error(path, sec.line, "duplicate requirement '" + req.name + "' in tier '" +
                                            req.tier + "'");
    set.items.push_back(std::move(req));
  }
  if (set.items.empty()) throw parse_error(path, 0, "no [requirement] sections found");
  return set;
}

std::vector<const Requirement*> RequirementSet::tier(const std::string& tier_name) const {
  std::vector<const Requirement*> out;
  for (const Requirement& req : items)
    if (req.tier == tier_name) out.push_back(&req);
  return out;
}

std::vector<std::string> RequirementSet::tiers() const {
  std::vector<std::string> out;
  for (const Requirement& req : items)
    if (std::find(out.begin(), out.end(), req.tier) == out.end()) out.push_back(req.tier);
  return out;
}

ConfigSection load_mission_config(const std::string& path) {
  KeyValueFile file = KeyValueFile::parse_file(path);
  const ConfigSection* sec = file.find("mission");
  if (!sec) throw parse_error(path, 0, "missing [mission] section");
  return *sec;
}

RequirementReport check_requirements(const ConfigSection& mission, const RequirementSet& reqs,
                                     const std::string& tier) {
  std::vector<const Requirement*> active = reqs.tier(tier);
  if (active.empty()) throw std::domain_error("requirement tier '" + tier + "' is empty");

  RequirementReport report;
  report.tier = tier;
  for (const Requirement* req : active) {
    RequirementCheck check;
    check.requirement = req;
    const ConfigEntry* entry = mission.find(req->name);
    if (!entry) {
      check.status = CheckStatus::unknown;
      ++report.n_unknown;
      report.checks.push_back(check);
      continue;
    }
    if (!entry->has_number)
      throw parse_error(mission.name, entry->line,
                        "mission value for '" + req->name + "' must be numeric");
    if (entry->unit != req->unit)
      throw parse_error(mission.name, entry->line,
                        "unit mismatch for '" + req->name + "': requirement uses '" + req->unit +
                            "', config uses '" + entry->unit + "'");
    check.has_actual = true;
    check.actual = entry->number;
    switch (req->op) {
      case Comparison::le:
        check.margin = req->value - check.actual;
        break;
      case Comparison::ge:
        check.margin = check.actual - req->value;
        break;
      case Comparison::eq: {
        double scale = std::max(1.0, std::fabs(req->value));
        check.margin = -(std::fabs(check.actual - req->value));
        if (std::fabs(check.actual - req->value) <= 1e-9 * scale) check.margin = 0.0;
        break;
      }
    }
    check.status = check.margin >= 0.0 ? CheckStatus::pass : CheckStatus::fail;
    if (check.status == CheckStatus::pass)
      ++report.n_pass;
    else
      ++report.n_fail;
    report.checks.push_back(check);
  }
  report.all_pass = report.n_fail == 0 && report.n_unknown == 0;
  return report;
}

double finesse_limit(double wavelength, double rel_length_stability, double cavity_length) {
  if (!(wavelength > 0.0)) throw std::domain_error("wavelength must be positive");
  if (!(cavity_length > 0.0)) throw std::domain_error("cavity length must be positive");
  if (rel_length_stability < 0.0)
    throw std::domain_error("relative length stability must be non-negative");
  if (rel_length_stability == 0.0) return std::numeric_limits<double>::infinity();
  return constants::pi * wavelength / (2.0 * rel_length_stability * cavity_length);
}

BudgetTable BudgetTable::load(const std::string& path) {
  auto rows = read_csv_file(path);
  if (rows.empty()) throw parse_error(path, 0, "empty budget table");

  BudgetTable table;
  table.source = path;
  size_t start = 0;
  if (!rows[0].empty() && rows[0][0] == "name") start = 1;  // header row
  for (size_t i = start; i < rows.size(); ++i) {
    const auto& cells = rows[i];
    int line = static_cast<int>(i + 1);
    if (cells.size() < 8) throw parse_error(path, line, "budget row needs 8 columns");
    BudgetRow row;
    row.name = cells[0];
    row.kind = cells[1];
    if (row.kind != "item" && row.kind != "optional" && row.kind != "subtotal" &&
        row.kind != "total" && row.kind != "info")
      throw parse_error(path, line, "unknown budget row kind '" + row.kind + "'");
    try {
      row.cbe = std::stod(cells[2]);
      if (!cells[3].empty()) {
        row.margin = std::stod(cells[3]) / 100.0;
        row.has_margin = true;
      }
      row.stated = std::stod(cells[4]);
    } catch (const parse_error&) {
      throw;
    } catch (...) {
      throw parse_error(path, line, "non-numeric budget value");
    }
    if (row.cbe < 0.0 || row.stated < 0.0)
      throw parse_error(path, line, "budget values must be non-negative");
    if (row.has_margin && row.margin < 0.0)
      throw parse_error(path, line, "margin must be non-negative");
    if (!cells[5].empty()) {
      std::string refs = cells[5];
      size_t pos = 0;
      while (pos != std::string::npos) {
        size_t next = refs.find(';', pos);
        std::string ref =
            next == std::string::npos ? refs.substr(pos) : refs.substr(pos, next - pos);
        if (!ref.empty()) row.sum_of.push_back(ref);
        pos = next == std::string::npos ? next : next + 1;
      }
    }
    row.label = cells[6];
    row.note = cells[7];
    if (table.find(row.name)) throw parse_error(path, line, "duplicate row name '" + row.name + "'");
    table.rows.push_back(std::move(row));
  }
  if (table.rows.empty()) throw parse_error(path, 0, "budget table has no rows");
  for (const BudgetRow& row : table.rows)
    for (const std::string& ref : row.sum_of)
      if (!table.find(ref))
        throw parse_error(path, 0, "row '" + row.name + "' sums unknown row '" + ref + "'");
  return table;
}

const BudgetRow* BudgetTable::find(const std::string& name) const {
  for (const BudgetRow& row : rows)
    if (row.name == name) return &row;
  return nullptr;
}

BudgetReport check_budget(const BudgetTable& table, double tolerance) {
  if (!(tolerance > 0.0)) throw std::domain_error("tolerance must be positive");
  BudgetReport report;
  report.tolerance = tolerance;
  report.rows_ok = true;
  report.totals_ok = true;
  for (const BudgetRow& row : table.rows) {
    BudgetRowCheck check;
    check.row = &row;
    if (row.has_margin) {
      check.margin_checked = true;
      check.recomputed = row.cbe * (1.0 + row.margin);
      check.margin_ok = std::fabs(check.recomputed - row.stated) <= tolerance;
      if (!check.margin_ok) report.rows_ok = false;
    }
    if (!row.sum_of.empty()) {
      check.sum_checked = true;
      for (const std::string& ref : row.sum_of) {
        const BudgetRow* part = table.find(ref);
        check.cbe_sum += part->cbe;
        check.stated_sum += part->stated;
      }
      check.sum_cbe_ok = std::fabs(check.cbe_sum - row.cbe) <= tolerance;
      check.sum_stated_ok = std::fabs(check.stated_sum - row.stated) <= tolerance;
      if (!check.sum_cbe_ok || !check.sum_stated_ok) report.totals_ok = false;
    }
    report.checks.push_back(check);
  }
  return report;
}

}  // namespace nanowave
