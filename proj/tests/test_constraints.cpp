#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "nanowave/constraints.hpp"
#include "nanowave/errors.hpp"
#include "test_util.hpp"

using namespace nanowave;
using testutil::rel_err;

namespace {

const RequirementCheck& find_check(const RequirementReport& report, const std::string& name) {
  for (const RequirementCheck& check : report.checks)
    if (check.requirement && check.requirement->name == name) return check;
  REQUIRE(false);
  throw std::logic_error("requirement not in report: " + name);
}

const Requirement* find_requirement(const RequirementSet& set, const std::string& tier,
                                    const std::string& name) {
  for (const Requirement& req : set.items)
    if (req.tier == tier && req.name == name) return &req;
  return nullptr;
}

const BudgetRowCheck& find_row_check(const BudgetReport& report, const std::string& name) {
  for (const BudgetRowCheck& check : report.checks)
    if (check.row && check.row->name == name) return check;
  REQUIRE(false);
  throw std::logic_error("row not in report: " + name);
}

}  // namespace

TEST_SUITE("constraints") {

TEST_CASE("shipped requirement file structure") {
  RequirementSet reqs = RequirementSet::load(testutil::data_file("requirements.cfg"));
  std::vector<std::string> tiers = reqs.tiers();
  REQUIRE(tiers.size() == 2);
  CHECK(tiers[0] == "science");
  CHECK(tiers[1] == "interference-possible");
  CHECK(reqs.tier("science").size() == 23);
  CHECK(reqs.tier("interference-possible").size() == 6);
  CHECK(reqs.tier("nonexistent").empty());

  // Order-of-magnitude ("much less than") bounds are marked soft.
  const Requirement* perp = find_requirement(reqs, "science", "position_accuracy_perp");
  REQUIRE(perp != nullptr);
  CHECK(perp->soft);
  const Requirement* loading = find_requirement(reqs, "science", "loading_time");
  REQUIRE(loading != nullptr);
  CHECK(loading->soft);
  const Requirement* env = find_requirement(reqs, "science", "environment_temperature");
  REQUIRE(env != nullptr);
  CHECK(!env->soft);
  CHECK(env->op == Comparison::le);
  CHECK(env->value == 20.0);
  CHECK(env->unit == "K");
}

TEST_CASE("default mission satisfies both tiers") {
  RequirementSet reqs = RequirementSet::load(testutil::data_file("requirements.cfg"));
  ConfigSection mission = load_mission_config(testutil::data_file("mission_default.cfg"));

  RequirementReport science = check_requirements(mission, reqs, "science");
  CHECK(science.all_pass);
  CHECK(science.n_pass == 23);
  CHECK(science.n_fail == 0);
  CHECK(science.n_unknown == 0);
  CHECK(science.checks.size() == 23);
  const RequirementCheck& env = find_check(science, "environment_temperature");
  CHECK(env.status == CheckStatus::pass);
  CHECK(env.has_actual);
  CHECK(rel_err(env.actual, 16.0) < 1e-12);
  CHECK(rel_err(env.margin, 4.0) < 1e-12);

  RequirementReport relaxed = check_requirements(mission, reqs, "interference-possible");
  CHECK(relaxed.all_pass);
  CHECK(relaxed.n_pass == 6);
}

TEST_CASE("hot mission fails science but keeps interference possible") {
  RequirementSet reqs = RequirementSet::load(testutil::data_file("requirements.cfg"));
  ConfigSection mission = load_mission_config(testutil::data_file("mission_hot.cfg"));

  RequirementReport science = check_requirements(mission, reqs, "science");
  CHECK(!science.all_pass);
  CHECK(science.n_fail == 3);  // environment and particle temperature, decoherence
  CHECK(science.n_unknown == 0);
  const RequirementCheck& env = find_check(science, "environment_temperature");
  CHECK(env.status == CheckStatus::fail);
  CHECK(rel_err(env.margin, -25.0) < 1e-12);
  const RequirementCheck& ptemp = find_check(science, "particle_temperature");
  CHECK(ptemp.status == CheckStatus::fail);
  const RequirementCheck& dec = find_check(science, "decoherence_parameter");
  CHECK(dec.status == CheckStatus::fail);

  RequirementReport relaxed = check_requirements(mission, reqs, "interference-possible");
  CHECK(relaxed.all_pass);
  CHECK(relaxed.n_fail == 0);
  // Equality at the threshold passes with zero margin.
  const RequirementCheck& env_relaxed = find_check(relaxed, "environment_temperature");
  CHECK(env_relaxed.status == CheckStatus::pass);
  CHECK(env_relaxed.margin == 0.0);
}

TEST_CASE("missing mission keys are reported unknown, not passed") {
  RequirementSet reqs = RequirementSet::load(testutil::data_file("requirements.cfg"));
  testutil::TempDir dir("reqmissing");
  std::string path = dir.write("empty_mission.cfg", "[mission]\n");
  ConfigSection mission = load_mission_config(path);

  RequirementReport report = check_requirements(mission, reqs, "science");
  CHECK(report.checks.size() == 23);
  CHECK(report.n_unknown == 23);
  CHECK(report.n_pass == 0);
  CHECK(report.n_fail == 0);
  CHECK(!report.all_pass);
  for (const RequirementCheck& check : report.checks) {
    CHECK(check.status == CheckStatus::unknown);
    CHECK(!check.has_actual);
  }

  CHECK_THROWS_AS(check_requirements(mission, reqs, "no-such-tier"), std::domain_error);
}

TEST_CASE("unit and format mismatches are hard errors") {
  RequirementSet reqs = RequirementSet::load(testutil::data_file("requirements.cfg"));
  testutil::TempDir dir("requnits");

  std::string celsius = dir.write("celsius.cfg", "[mission]\nenvironment_temperature = 16 C\n");
  CHECK_THROWS_AS(check_requirements(load_mission_config(celsius), reqs, "science"),
                  parse_error);

  std::string words = dir.write("words.cfg", "[mission]\nenvironment_temperature = cold\n");
  CHECK_THROWS_AS(check_requirements(load_mission_config(words), reqs, "science"), parse_error);

  std::string no_section = dir.write("plain.cfg", "[instrument]\nfoo = 1\n");
  CHECK_THROWS_AS(load_mission_config(no_section), parse_error);
}

TEST_CASE("equality requirements use a relative tolerance") {
  RequirementSet reqs = RequirementSet::load(testutil::data_file("requirements.cfg"));
  testutil::TempDir dir("reqeq");

  std::string close = dir.write("close.cfg", "[mission]\ngrating_period = 100.00000000001 nm\n");
  RequirementReport r1 = check_requirements(load_mission_config(close), reqs, "science");
  const RequirementCheck& ok = find_check(r1, "grating_period");
  CHECK(ok.status == CheckStatus::pass);
  CHECK(ok.margin == 0.0);

  std::string off = dir.write("off.cfg", "[mission]\ngrating_period = 101 nm\n");
  RequirementReport r2 = check_requirements(load_mission_config(off), reqs, "science");
  const RequirementCheck& bad = find_check(r2, "grating_period");
  CHECK(bad.status == CheckStatus::fail);
  CHECK(rel_err(bad.margin, -1.0) < 1e-9);
}

TEST_CASE("requirement file parse errors") {
  testutil::TempDir dir("reqparse");

  std::string dup = dir.write("dup.cfg",
                              "[requirement]\nname = a\ntier = t\nop = le\nvalue = 1 K\n"
                              "[requirement]\nname = a\ntier = t\nop = ge\nvalue = 2 K\n");
  CHECK_THROWS_AS(RequirementSet::load(dup), parse_error);

  std::string bad_op = dir.write("badop.cfg",
                                 "[requirement]\nname = a\ntier = t\nop = lt\nvalue = 1 K\n");
  CHECK_THROWS_AS(RequirementSet::load(bad_op), parse_error);

  std::string no_value = dir.write("noval.cfg", "[requirement]\nname = a\ntier = t\nop = le\n");
  CHECK_THROWS_AS(RequirementSet::load(no_value), parse_error);

  std::string word_value =
      dir.write("wordval.cfg", "[requirement]\nname = a\ntier = t\nop = le\nvalue = small\n");
  CHECK_THROWS_AS(RequirementSet::load(word_value), parse_error);

  std::string empty = dir.write("none.cfg", "[other]\nx = 1\n");
  CHECK_THROWS_AS(RequirementSet::load(empty), parse_error);

  std::string bad_flag = dir.write(
      "badflag.cfg", "[requirement]\nname = a\ntier = t\nop = le\nvalue = 1 K\nsoft = maybe\n");
  CHECK_THROWS_AS(RequirementSet::load(bad_flag), parse_error);
}

TEST_CASE("cavity finesse limited by length stability") {
  // At 5.5 cm and a relative length stability of 1e-6 the IR cavity supports
  // a finesse of about 30 and the IR+UV cavity only about 6; the ratio is the
  // wavelength ratio 1064/200 = 5.32 exactly.
  double f_ir = finesse_limit(1064e-9, 1e-6, 0.055);
  double f_uv = finesse_limit(200e-9, 1e-6, 0.055);
  CHECK(rel_err(f_ir, 30.387769) < 1e-6);
  CHECK(rel_err(f_uv, 5.711987) < 1e-6);
  CHECK(rel_err(f_ir / f_uv, 5.32) < 1e-12);

  // Tighter stability allows a proportionally larger finesse.
  CHECK(rel_err(finesse_limit(1064e-9, 1e-7, 0.055), 10.0 * f_ir) < 1e-12);
  CHECK(finesse_limit(1064e-9, 0.0, 0.055) == std::numeric_limits<double>::infinity());
  CHECK_THROWS_AS(finesse_limit(0.0, 1e-6, 0.055), std::domain_error);
  CHECK_THROWS_AS(finesse_limit(1064e-9, -1e-6, 0.055), std::domain_error);
  CHECK_THROWS_AS(finesse_limit(1064e-9, 1e-6, 0.0), std::domain_error);
}

TEST_CASE("launch composite mass budget is internally consistent") {
  BudgetTable table = BudgetTable::load(testutil::data_file("budget_mass_total.csv"));
  REQUIRE(table.rows.size() == 12);
  BudgetReport report = check_budget(table);
  CHECK(report.rows_ok);
  CHECK(report.totals_ok);

  const BudgetRowCheck& payload = find_row_check(report, "payload");
  CHECK(payload.margin_checked);
  CHECK(rel_err(payload.recomputed, 131.0) < 1e-12);
  CHECK(payload.margin_ok);

  const BudgetRowCheck& dry = find_row_check(report, "launch_composite_dry");
  CHECK(dry.sum_checked);
  CHECK(rel_err(dry.cbe_sum, 592.0) < 1e-12);
  CHECK(rel_err(dry.stated_sum, 648.0) < 1e-12);
  CHECK(dry.sum_cbe_ok);
  CHECK(dry.sum_stated_ok);

  const BudgetRowCheck& wet = find_row_check(report, "launch_composite_wet");
  CHECK(rel_err(wet.cbe_sum, 1842.0) < 1e-12);
  CHECK(rel_err(wet.stated_sum, 1898.0) < 1e-12);

  const BudgetRowCheck& reference = find_row_check(report, "lpf_launch_composite_wet");
  CHECK(rel_err(reference.stated_sum, 1899.0) < 1e-12);
}

TEST_CASE("payload mass budget reproduces every margin cell") {
  BudgetTable table = BudgetTable::load(testutil::data_file("budget_mass_payload.csv"));
  REQUIRE(table.rows.size() == 17);
  BudgetReport report = check_budget(table);

  // Every stated item follows from cbe * (1 + margin) within half a unit,
  // including the readout row whose printed label understates its margin.
  CHECK(report.rows_ok);
  const BudgetRowCheck& cmos = find_row_check(report, "cmos_readout");
  CHECK(cmos.margin_checked);
  CHECK(cmos.margin_ok);
  CHECK(rel_err(cmos.recomputed, 6.0) < 1e-12);
  CHECK(cmos.row->label == "100%");
  CHECK(rel_err(cmos.row->margin, 2.0) < 1e-12);

  // The printed total does not equal the sum of the printed items; the
  // checker flags the declared sum rather than silently accepting it.
  CHECK(!report.totals_ok);
  const BudgetRowCheck& total = find_row_check(report, "payload_total");
  CHECK(total.sum_checked);
  CHECK(total.margin_ok);  // 100 * 1.31 = 131 itself is consistent
  CHECK(rel_err(total.cbe_sum, 120.0) < 1e-12);
  CHECK(rel_err(total.stated_sum, 172.75) < 1e-12);
  CHECK(!total.sum_cbe_ok);
  CHECK(!total.sum_stated_ok);

  // The optional bake-out heater is outside the declared sum.
  CHECK(total.row->sum_of.size() == 15);
  const BudgetRow* heater = table.find("shield_bakeout_heater");
  REQUIRE(heater != nullptr);
  CHECK(heater->kind == "optional");
}

TEST_CASE("payload power budget flags the stated science-mode sum") {
  BudgetTable table = BudgetTable::load(testutil::data_file("budget_power_payload.csv"));
  REQUIRE(table.rows.size() == 19);
  BudgetReport report = check_budget(table);
  CHECK(report.rows_ok);
  CHECK(!report.totals_ok);

  const BudgetRowCheck& science = find_row_check(report, "total_science_mode");
  CHECK(science.margin_checked);
  CHECK(science.margin_ok);  // 143 * 1.16084 = 166.0 within tolerance
  CHECK(std::fabs(science.recomputed - 166.0) < 0.5);
  CHECK(science.sum_checked);
  CHECK(science.sum_cbe_ok);  // items sum to exactly 143 CBE
  CHECK(rel_err(science.cbe_sum, 143.0) < 1e-12);
  CHECK(!science.sum_stated_ok);  // stated items sum to 163.5, not 166
  CHECK(rel_err(science.stated_sum, 163.5) < 1e-12);

  const BudgetRowCheck& minimal = find_row_check(report, "total_minimal");
  CHECK(minimal.sum_cbe_ok);
  CHECK(minimal.sum_stated_ok);

  const BudgetRowCheck& dmu_heater = find_row_check(report, "total_dmu_heater");
  CHECK(dmu_heater.margin_ok);
  CHECK(dmu_heater.sum_cbe_ok);
  CHECK(dmu_heater.sum_stated_ok);
  CHECK(rel_err(dmu_heater.stated_sum, 323.40) < 1e-12);

  const BudgetRowCheck& ltp = find_row_check(report, "ltp_total_science_mode");
  CHECK(ltp.sum_cbe_ok);
  CHECK(ltp.sum_stated_ok);
  CHECK(rel_err(ltp.cbe_sum, 141.0) < 1e-12);
}

TEST_CASE("mode power overview is informational only") {
  BudgetTable table = BudgetTable::load(testutil::data_file("budget_power_modes.csv"));
  REQUIRE(table.rows.size() == 6);
  BudgetReport report = check_budget(table);
  CHECK(report.rows_ok);
  CHECK(report.totals_ok);
  for (const BudgetRowCheck& check : report.checks) {
    CHECK(!check.margin_checked);
    CHECK(!check.sum_checked);
    CHECK(check.row->kind == "info");
  }
}

TEST_CASE("budget loader rejects malformed tables") {
  testutil::TempDir dir("budget");

  std::string short_row = dir.write("short.csv", "a,item,1,,1,,x\n");
  CHECK_THROWS_AS(BudgetTable::load(short_row), parse_error);

  std::string bad_kind = dir.write("kind.csv", "a,widget,1,,1,,,\n");
  CHECK_THROWS_AS(BudgetTable::load(bad_kind), parse_error);

  std::string dup = dir.write("dup.csv", "a,item,1,,1,,,\na,item,2,,2,,,\n");
  CHECK_THROWS_AS(BudgetTable::load(dup), parse_error);

  std::string unknown_ref = dir.write("ref.csv", "a,item,1,,1,,,\nt,total,1,,1,a;b,,\n");
  CHECK_THROWS_AS(BudgetTable::load(unknown_ref), parse_error);

  std::string negative = dir.write("neg.csv", "a,item,-1,,1,,,\n");
  CHECK_THROWS_AS(BudgetTable::load(negative), parse_error);

  std::string neg_margin = dir.write("negm.csv", "a,item,1,-5,1,,,\n");
  CHECK_THROWS_AS(BudgetTable::load(neg_margin), parse_error);

  std::string word = dir.write("word.csv", "a,item,many,,1,,,\n");
  CHECK_THROWS_AS(BudgetTable::load(word), parse_error);

  std::string empty = dir.write("empty.csv", "");
  CHECK_THROWS_AS(BudgetTable::load(empty), parse_error);

  std::string header_only = dir.write("header.csv", "name,kind,cbe,margin_percent,stated,sum_of,label,note\n");
  CHECK_THROWS_AS(BudgetTable::load(header_only), parse_error);

  // A headerless single-row table is valid; the tolerance must be positive.
  std::string minimal = dir.write("minimal.csv", "a,item,10,10,11,,10%,\n");
  BudgetTable table = BudgetTable::load(minimal);
  REQUIRE(table.rows.size() == 1);
  CHECK(check_budget(table).rows_ok);
  CHECK_THROWS_AS(check_budget(table, 0.0), std::domain_error);
  CHECK_THROWS_AS(check_budget(table, -1.0), std::domain_error);
}

}  // TEST_SUITE
