// lfwave: construct and verify tree-generated Riesz MRAs and biorthogonal
// wavelet systems on local fields of positive characteristic.
//
// Exit codes: 0 success / valid, 1 usage error, 2 verification failure,
// 3 schema error.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "lfwave/json_io.hpp"
#include "lfwave/verify.hpp"

namespace {

using namespace lfwave;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerification = 2;
constexpr int kExitSchema = 3;

Json check_to_json(const CheckResult& c) {
  Json j{{"name", c.name}, {"pass", c.pass}};
  if (c.deviation) j["deviation"] = *c.deviation;
  if (c.tolerance) j["tolerance"] = *c.tolerance;
  if (!c.detail.empty()) j["detail"] = c.detail;
  return j;
}

Json outcome_to_json(const VerifyOutcome& outcome) {
  Json checks = Json::array();
  for (const CheckResult& c : outcome.checks) checks.push_back(check_to_json(c));
  return Json{{"pass", outcome.pass}, {"checks", std::move(checks)}};
}

void emit_report(const Json& report, const std::string& report_path) {
  std::cout << report.dump(2) << std::endl;
  if (!report_path.empty())
    save_json_file(report_path, wrap_document("report", report));
}

double default_tolerance() {
  if (const char* env = std::getenv("LFWAVE_TOL")) {
    try {
      return std::stod(env);
    } catch (const std::exception&) {
      throw CLI::ValidationError("LFWAVE_TOL is not a number");
    }
  }
  return 1e-9;
}

std::pair<int, int> parse_levels(const std::string& spec) {
  const auto dots = spec.find("..");
  if (dots == std::string::npos)
    throw CLI::ValidationError("levels must look like '-1..1'");
  try {
    return {std::stoi(spec.substr(0, dots)), std::stoi(spec.substr(dots + 2))};
  } catch (const std::exception&) {
    throw CLI::ValidationError("levels must look like '-1..1'");
  }
}

ValidTree load_tree(const std::string& path) {
  return tree_from_json(expect_document(load_json_file(path), "tree"));
}

std::string grid_csv(const WaveletSystem& system) {
  const MRAFamily& family = system.family();
  std::vector<SpatialStepFunction> funcs;
  std::vector<std::string> names{"phi", "dual_phi"};
  funcs.push_back(inverse_fourier(family.scaling()));
  funcs.push_back(inverse_fourier(family.dual_scaling()));
  for (std::size_t i = 0; i < system.count(); ++i) {
    const std::string tag = std::to_string(system.labels()[i].to_index());
    names.push_back("psi" + tag);
    funcs.push_back(inverse_fourier(system.psi(i)));
    names.push_back("dual_psi" + tag);
    funcs.push_back(inverse_fourier(system.dual_psi(i)));
  }
  int radius = 0, resolution = 0;
  for (const auto& f : funcs) {
    radius = std::max(radius, f.radius());
    resolution = std::max(resolution, f.resolution());
  }
  const SpatialStepFunction grid(family.params(), resolution, radius);
  std::ostringstream csv;
  csv << "index";
  for (int j = -radius; j < resolution; ++j) csv << ",x[" << j << "]";
  for (const std::string& n : names) csv << "," << n << "_re," << n << "_im";
  csv << "\n";
  for (std::size_t i = 0; i < grid.grid_size(); ++i) {
    const FieldElement x = grid.point(i);
    csv << i;
    for (int j = -radius; j < resolution; ++j) {
      csv << ",";
      const auto digits = x.block_at(j).digits();
      for (std::size_t d = 0; d < digits.size(); ++d) {
        if (d) csv << "|";
        csv << digits[d];
      }
    }
    for (const auto& f : funcs) {
      const Complex v = f.at_point(x);
      csv << "," << v.real() << "," << v.imag();
    }
    csv << "\n";
  }
  return csv.str();
}

int run(int argc, char** argv) {
  CLI::App app{
      "Tree-generated Riesz multiresolution analyses and biorthogonal "
      "wavelets on local fields of positive characteristic"};
  app.require_subcommand(1);

  double tolerance = 1e-9;
  try {
    tolerance = default_tolerance();
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << std::endl;
    return kExitUsage;
  }
  app.add_option("--tol", tolerance,
                 "comparison tolerance for verification checks");

  // ---- tree ------------------------------------------------------------
  auto* tree_cmd = app.add_subcommand("tree", "N-valid tree operations");
  tree_cmd->require_subcommand(1);

  std::uint32_t opt_p = 2, opt_s = 1, opt_N = 1;
  std::string out_path, in_path, mask_path, tree_path, report_path;
  int node_id = 0, target_id = 0, window_len = 0;
  double opt_A = 0.5, opt_B = 1.6;
  std::uint64_t opt_seed = 0;

  auto* tree_basic = tree_cmd->add_subcommand(
      "basic", "construct the minimal-height N-valid tree");
  tree_basic->add_option("--p", opt_p, "field characteristic (prime)")
      ->required();
  tree_basic->add_option("--s", opt_s, "digit block width")->required();
  tree_basic->add_option("--N", opt_N, "window length")->required();
  tree_basic->add_option("-o,--out", out_path, "output tree file")
      ->required();
  tree_basic->callback([&]() {
    const ValidTree t = ValidTree::basic({opt_p, opt_s}, opt_N);
    save_json_file(out_path, wrap_document("tree", to_json(t)));
  });

  auto* tree_validate =
      tree_cmd->add_subcommand("validate", "check N-validity");
  tree_validate->add_option("file", in_path, "tree file")->required();
  int validate_rc = kExitOk;
  tree_validate->callback([&]() {
    const ValidTree t = load_tree(in_path);
    const TreeValidityReport r = validate_tree(t);
    Json j{{"valid", r.valid()},
           {"root_zero", r.root_zero},
           {"zero_spine", r.zero_spine},
           {"windows_complete", r.windows_complete},
           {"windows_unique", r.windows_unique},
           {"height", r.height},
           {"node_count", r.node_count},
           {"problems", r.problems}};
    std::cout << j.dump(2) << std::endl;
    if (!r.valid()) validate_rc = kExitVerification;
  });

  auto* tree_step = tree_cmd->add_subcommand(
      "step", "apply one basic step (subtree relocation)");
  tree_step->add_option("file", in_path, "tree file")->required();
  tree_step->add_option("--node", node_id, "root of the moved subtree")
      ->required();
  tree_step->add_option("--target", target_id, "target leaf")->required();
  tree_step->add_option("-o,--out", out_path, "output tree file")->required();
  tree_step->callback([&]() {
    const ValidTree t = load_tree(in_path);
    try {
      const ValidTree next = t.with_basic_step(node_id, target_id);
      save_json_file(out_path, wrap_document("tree", to_json(next)));
    } catch (const std::invalid_argument& e) {
      std::cerr << e.what() << std::endl;
      validate_rc = kExitVerification;
    }
  });

  auto* tree_windows =
      tree_cmd->add_subcommand("windows", "enumerate label windows");
  tree_windows->add_option("file", in_path, "tree file")->required();
  tree_windows->add_option("--len", window_len,
                           "window length (default: N)");
  tree_windows->add_option("-o,--out", out_path, "optional output file");
  tree_windows->callback([&]() {
    const ValidTree t = load_tree(in_path);
    const int len =
        window_len > 0 ? window_len : static_cast<int>(t.window_length());
    Json entries = Json::array();
    for (const auto& [w, id] : t.windows(len)) {
      Json labels = Json::array();
      for (const GFBlock& b : w) labels.push_back(to_json(b));
      entries.push_back(Json{{"window", std::move(labels)},
                             {"node", id},
                             {"depth", t.depth(id)}});
    }
    Json j{{"len", len}, {"windows", std::move(entries)}};
    std::cout << j.dump(2) << std::endl;
    if (!out_path.empty())
      save_json_file(out_path, wrap_document("windows", j));
  });

  // ---- set -------------------------------------------------------------
  auto* set_cmd =
      app.add_subcommand("set", "elementary set construction/validation");
  set_cmd->require_subcommand(1);

  auto* set_build = set_cmd->add_subcommand(
      "build", "elementary set of a tree's (N+1)-windows");
  set_build->add_option("--tree", tree_path, "tree file")->required();
  set_build->add_option("-o,--out", out_path, "output set file")->required();
  set_build->callback([&]() {
    const ElementarySet set = ElementarySet::from_tree(load_tree(tree_path));
    save_json_file(out_path, wrap_document("elementary_set", to_json(set)));
  });

  std::optional<std::uint32_t> opt_validate_N, opt_validate_M;
  auto* set_validate = set_cmd->add_subcommand(
      "validate", "check the two elementary-set conditions");
  set_validate->add_option("file", in_path, "set file")->required();
  set_validate->add_option("--N", opt_validate_N, "window length override");
  set_validate->add_option("--M", opt_validate_M, "extension bound override");
  set_validate->callback([&]() {
    const ElementarySet set = elementary_set_from_json(
        expect_document(load_json_file(in_path), "elementary_set"));
    const std::uint32_t N = opt_validate_N.value_or(set.N());
    const std::uint32_t M = opt_validate_M.value_or(set.M());
    const auto r = validate_elementary(set.cosets(), set.params(), N, M);
    Json j{{"valid", r.valid()},
           {"count_ok", r.count_ok},
           {"disjoint", r.disjoint},
           {"xi_exhaustive", r.xi_exhaustive},
           {"xi0_trivial", r.xi0_trivial},
           {"shells_hit", r.shells_hit},
           {"digits_in_range", r.digits_in_range},
           {"problems", r.problems}};
    if (r.maximal_M) j["maximal_M"] = *r.maximal_M;
    std::cout << j.dump(2) << std::endl;
    if (!r.valid()) validate_rc = kExitVerification;
  });

  // ---- mask ------------------------------------------------------------
  auto* mask_cmd = app.add_subcommand("mask", "mask fixtures");
  mask_cmd->require_subcommand(1);
  auto* mask_build = mask_cmd->add_subcommand(
      "build", "seeded mask with |m|^2 in [A, B] on a tree's set");
  mask_build->add_option("--tree", tree_path, "tree file")->required();
  mask_build->add_option("--A", opt_A, "Riesz floor")->required();
  mask_build->add_option("--B", opt_B, "Riesz ceiling")->required();
  mask_build->add_option("--seed", opt_seed, "rng seed");
  mask_build->add_option("-o,--out", out_path, "output mask file")
      ->required();
  mask_build->callback([&]() {
    const ValidTree t = load_tree(tree_path);
    const Mask m =
        default_mask(ElementarySet::from_tree(t), opt_A, opt_B, opt_seed);
    save_json_file(out_path, wrap_document("mask", mask_to_json(m)));
  });

  // ---- mra -------------------------------------------------------------
  auto* mra_cmd = app.add_subcommand("mra", "scaling pair construction");
  mra_cmd->require_subcommand(1);

  auto* mra_build = mra_cmd->add_subcommand(
      "build", "build the scaling pair from a tree and a mask");
  mra_build->add_option("--tree", tree_path, "tree file")->required();
  mra_build->add_option("--mask", mask_path, "mask file")->required();
  mra_build->add_option("-o,--out", out_path, "output family file")
      ->required();
  mra_build->callback([&]() {
    const ValidTree t = load_tree(tree_path);
    const Mask m = mask_from_json(
        t, expect_document(load_json_file(mask_path), "mask"));
    const MRAFamily family = MRAFamily::build(t, m);
    save_json_file(out_path,
                   wrap_document("family", family_to_json(family, t)));
  });

  auto* mra_verify =
      mra_cmd->add_subcommand("verify", "re-derive and check a family file");
  mra_verify->add_option("file", in_path, "family file")->required();
  mra_verify->add_option("--report", report_path, "also save the report");
  mra_verify->add_option("--tol", tolerance, "comparison tolerance");
  mra_verify->callback([&]() {
    const Json payload = expect_document(load_json_file(in_path), "family");
    auto [tree, family] = family_from_json(payload);
    VerifyOptions options;
    options.tolerance = tolerance;
    VerifyOutcome outcome = verify_family(tree, family, options);
    CheckResult stored;
    stored.name = "stored_spectra_match";
    const double dev = family_stored_deviation(payload, family);
    stored.deviation = dev;
    stored.tolerance = 1e-12;
    stored.pass = dev <= 1e-12;
    outcome.add(stored);
    emit_report(outcome_to_json(outcome), report_path);
    if (!outcome.pass) validate_rc = kExitVerification;
  });

  // ---- wavelets ----------------------------------------------------------
  auto* wavelets_cmd =
      app.add_subcommand("wavelets", "wavelet system construction");
  wavelets_cmd->require_subcommand(1);

  auto* wavelets_build = wavelets_cmd->add_subcommand(
      "build", "build the wavelet system of a family");
  wavelets_build->add_option("family", in_path, "family file")->required();
  wavelets_build->add_option("-o,--out", out_path, "output system file")
      ->required();
  wavelets_build->callback([&]() {
    auto [tree, family] =
        family_from_json(expect_document(load_json_file(in_path), "family"));
    const WaveletSystem system = WaveletSystem::build(family);
    save_json_file(out_path,
                   wrap_document("system", system_to_json(system, tree)));
  });

  auto* wavelets_verify = wavelets_cmd->add_subcommand(
      "verify", "support properties and the matrix condition");
  wavelets_verify->add_option("file", in_path, "system file")->required();
  wavelets_verify->add_option("--report", report_path, "also save the report");
  wavelets_verify->add_option("--tol", tolerance, "comparison tolerance");
  wavelets_verify->callback([&]() {
    const Json payload = expect_document(load_json_file(in_path), "system");
    auto [tree, system] = system_from_json(payload);
    VerifyOutcome outcome;
    {
      const auto r = check_mask_properties(system);
      CheckResult c;
      c.name = "shifted_mask_supports";
      c.pass = r.pass();
      outcome.add(c);
    }
    {
      const auto r = check_matrix_condition(system);
      CheckResult c;
      c.name = "matrix_condition";
      c.deviation = r.max_deviation;
      c.tolerance = tolerance;
      c.pass = r.max_deviation <= tolerance && r.single_term;
      outcome.add(c);
    }
    {
      CheckResult c;
      c.name = "stored_spectra_match";
      const double dev = system_stored_deviation(payload, system);
      c.deviation = dev;
      c.tolerance = 1e-12;
      c.pass = dev <= 1e-12;
      outcome.add(c);
    }
    emit_report(outcome_to_json(outcome), report_path);
    if (!outcome.pass) validate_rc = kExitVerification;
  });

  // ---- verify all ---------------------------------------------------------
  auto* verify_cmd = app.add_subcommand("verify", "verification batteries");
  verify_cmd->require_subcommand(1);
  auto* verify_all_cmd = verify_cmd->add_subcommand(
      "all", "run every check against a system file");
  std::string levels_spec = "-1..1";
  std::optional<std::uint32_t> opt_depth;
  verify_all_cmd->add_option("file", in_path, "system file")->required();
  verify_all_cmd->add_option("--depth", opt_depth,
                             "shift depth (default N+1)");
  verify_all_cmd->add_option("--levels", levels_spec,
                             "dilation levels, e.g. -1..1");
  verify_all_cmd->add_option("--report", report_path, "report output file");
  verify_all_cmd->add_option("--tol", tolerance, "comparison tolerance");
  verify_all_cmd->callback([&]() {
    const Json payload = expect_document(load_json_file(in_path), "system");
    auto [tree, system] = system_from_json(payload);
    VerifyOptions options;
    options.tolerance = tolerance;
    options.depth = opt_depth;
    std::tie(options.level_lo, options.level_hi) = parse_levels(levels_spec);
    VerifyOutcome outcome = verify_all(tree, system, options);
    CheckResult stored;
    stored.name = "stored_spectra_match";
    const double dev = system_stored_deviation(payload, system);
    stored.deviation = dev;
    stored.tolerance = 1e-12;
    stored.pass = dev <= 1e-12;
    outcome.add(stored);
    emit_report(outcome_to_json(outcome), report_path);
    if (!outcome.pass) validate_rc = kExitVerification;
  });

  // ---- export -------------------------------------------------------------
  auto* export_cmd = app.add_subcommand("export", "grid exports");
  export_cmd->require_subcommand(1);
  auto* export_grid = export_cmd->add_subcommand(
      "grid", "CSV of the spatial functions over the common grid");
  export_grid->add_option("file", in_path, "system file")->required();
  export_grid->add_option("-o,--out", out_path, "output CSV file")
      ->required();
  export_grid->callback([&]() {
    auto [tree, system] =
        system_from_json(expect_document(load_json_file(in_path), "system"));
    std::ofstream out(out_path);
    if (!out) throw SchemaError("cannot write " + out_path);
    out << grid_csv(system);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }
  return validate_rc;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const lfwave::SchemaError& e) {
    std::cerr << "schema error: " << e.what() << std::endl;
    return kExitSchema;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kExitVerification;
  }
}
