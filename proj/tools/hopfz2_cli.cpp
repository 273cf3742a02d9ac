// Batch front-end. Exit status: 0 success, 1 mathematical failure, 2 usage error or budget refusal.
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "hopfz2/hopfz2.hpp"

namespace {

using namespace hopfz2;
using io::json;

constexpr int kOk = 0, kFail = 1, kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Input {
  std::string data_path;
  std::string preset;
};

ExtensionData load(const Input& in) {
  if (!in.preset.empty() && !in.data_path.empty()) throw UsageError("give either a data file or --preset, not both");
  if (!in.preset.empty()) {
    try {
      return make_preset(in.preset).data;
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  if (in.data_path.empty()) throw UsageError("a data file or --preset is required");
  return io::load_data(in.data_path);
}

void print_report(const Report& r) { std::cout << r.str(); }

std::string elem_list(const ExtensionData& d, const std::vector<Elem>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + d.group().str(v[i]);
  return s + "}";
}

int cmd_validate(const Input& in, bool axioms) {
  ExtensionData d = load(in);
  Report v = validate(d);
  print_report(v);
  print_report(check_necessary(d));
  bool ok = v.ok();
  if (axioms && ok) {
    Report h = verify_hopf_axioms(d);
    print_report(h);
    ok = h.ok();
  }
  std::cout << (ok ? "valid" : "invalid") << "\n";
  return ok ? kOk : kFail;
}

int cmd_info(const Input& in) {
  ExtensionData d = load(in);
  const auto& G = d.group();
  std::cout << "|G| = " << d.size() << "\n";
  std::cout << "dim H = " << 2 * d.size() << "\n";
  std::cout << "S = " << elem_list(d, d.S()) << "\n";
  std::cout << "T = " << elem_list(d, d.T()) << "\n";
  std::cout << "b = " << (d.b() ? G.str(*d.b()) : std::string("none")) << "\n";
  if (d.has_presentation()) {
    const auto& P = d.presentation();
    std::cout << "presentation: a = " << G.str(P.a) << ", s = " << elem_list(d, P.s) << ", orders = [";
    for (std::size_t i = 0; i < P.k.size(); ++i) std::cout << (i ? ", " : "") << P.k[i];
    std::cout << "]\n";
  } else {
    std::cout << "presentation: none\n";
  }
  int nontrivial_eta = 0;
  for (Elem g = 0; g < d.size(); ++g)
    for (Elem h = 0; h < d.size(); ++h) nontrivial_eta += !d.eta(g, h).is_one();
  std::cout << "eta: " << nontrivial_eta << " of " << d.size() * d.size() << " values != 1\n";
  std::cout << "fingerprint = " << io::fingerprint(d) << "\n";
  return kOk;
}

json verification_json(const ExtensionData& d, const RMatrix& R) {
  Report q = verify_quasitriangular(d, R), y = verify_qybe(d, R);
  json j = {{"quasitriangular", q.ok()}, {"qybe", y.ok()}};
  if (!q.ok()) j["witness"] = q.first_failure()->name + ": " + q.first_failure()->witness;
  return j;
}

void write_outputs(const std::string& dir, const std::string& stem, const std::vector<json>& files, const json& summary) {
  if (dir.empty()) return;
  std::filesystem::create_directories(dir);
  for (std::size_t i = 0; i < files.size(); ++i)
    io::write_json_file((std::filesystem::path(dir) / (stem + "_" + std::to_string(i) + ".json")).string(), files[i]);
  io::write_json_file((std::filesystem::path(dir) / "summary.json").string(), summary);
}

int cmd_enumerate(const Input& in, const std::string& kind, bool verify, const Budget& budget, const std::string& out) {
  ExtensionData d = load(in);
  Report v = validate(d);
  if (!v.ok()) {
    print_report(v);
    return kFail;
  }
  json summary = {{"fingerprint", io::fingerprint(d)}, {"kind", kind}};
  json counts = json::object();
  std::vector<json> files;
  bool all_verified = true;
  auto emit = [&](const std::string& label, const ExtensionData& on, const std::vector<RMatrix>& rs) {
    counts[label] = rs.size();
    for (const auto& R : rs) {
      json f = io::rmatrix_to_json(R);
      if (verify) {
        json vj = verification_json(on, R);
        all_verified = all_verified && vj["quasitriangular"].get<bool>() && vj["qybe"].get<bool>();
        f["verification"] = vj;
      }
      files.push_back(f);
    }
  };
  if (kind == "trivial" || kind == "all") emit("trivial", d, enumerate_trivial(d, budget));
  if (kind == "special" || kind == "all") {
    auto res = enumerate_all_nontrivial(d, budget);
    emit("nontrivial", d, res.rmatrices);
    if (!res.diagnostics.ok()) summary["diagnostics"] = res.diagnostics.str();
  }
  if (kind == "general") {
    Report pre = nontrivial_preconditions(d);
    if (!pre.ok()) {
      summary["diagnostics"] = pre.str();
      emit("general", d, {});
    } else {
      ExtensionData u = d.untwisted();
      std::vector<RMatrix> rs;
      for (const auto& t : enumerate_general_tuples(u, budget)) rs.push_back(tuple_to_rmatrix_general(u, u.presentation(), t));
      std::vector<int> none;
      canonicalize(u, rs, none);
      summary["algebra"] = "untwisted";
      emit("general", u, rs);
    }
  }
  if (kind == "phi-symmetric") emit("phi-symmetric", d, enumerate_phi_symmetric(d, budget));
  summary["counts"] = counts;
  if (verify) summary["all_verified"] = all_verified;
  json doc = summary;
  doc["rmatrices"] = files;
  if (out.empty())
    std::cout << doc.dump(2) << "\n";
  else {
    write_outputs(out, "R", files, summary);
    std::cout << summary.dump(2) << "\n";
  }
  return verify && !all_verified ? kFail : kOk;
}

int cmd_verify(const Input& in, const std::string& r_path, bool qybe) {
  ExtensionData d = load(in);
  Report v = validate(d);
  if (!v.ok()) {
    print_report(v);
    return kFail;
  }
  if (r_path.empty()) throw UsageError("verify needs an R-matrix file");
  RMatrix R = io::load_rmatrix(d, r_path);
  Report wf = check_well_formed(d, R);
  print_report(wf);
  if (!wf.ok()) return kFail;
  Report q = verify_quasitriangular(d, R);
  print_report(q);
  bool ok = q.ok();
  if (qybe) {
    Report y = verify_qybe(d, R);
    print_report(y);
    ok = ok && y.ok();
  }
  std::cout << (ok ? "verified" : "not verified") << "\n";
  return ok ? kOk : kFail;
}

int cmd_classify(const Input& in, const std::string& out) {
  ExtensionData d = load(in);
  auto fam = detect_family(d);
  if (!fam) throw UsageError("classify: data is not from the K or A family");
  auto items = classify(d);
  json summary = {{"fingerprint", io::fingerprint(d)},
                  {"family", family_name(fam->first)},
                  {"n", fam->second},
                  {"count", items.size()}};
  std::vector<json> files;
  json entries = json::array();
  bool ok = true;
  for (const auto& c : items) {
    json params = json::array();
    for (const auto& p : c.params) params.push_back(io::root_to_json(p));
    json vj = verification_json(d, c.R);
    vj["phi_symmetric"] = is_phi_symmetric(d, c.R);
    ok = ok && vj["quasitriangular"].get<bool>() && vj["qybe"].get<bool>();
    entries.push_back({{"params", params}, {"tuple", io::tuple_to_json(c.tuple)}, {"verification", vj}});
    files.push_back(io::rmatrix_to_json(c.R));
  }
  summary["all_verified"] = ok;
  json doc = summary;
  doc["structures"] = entries;
  if (out.empty()) {
    doc["rmatrices"] = files;
    std::cout << doc.dump(2) << "\n";
  } else {
    write_outputs(out, "R", files, doc);
    std::cout << summary.dump(2) << "\n";
  }
  return ok ? kOk : kFail;
}

int cmd_export(const Input& in, const std::string& r_path, const std::string& format) {
  ExtensionData d = load(in);
  if (r_path.empty()) {
    if (format != "json") throw UsageError("export without an R-matrix supports only --format json");
    std::cout << io::data_to_json(d).dump(2) << "\n";
    return kOk;
  }
  RMatrix R = io::load_rmatrix(d, r_path);
  if (format == "json")
    std::cout << io::rmatrix_to_json(R).dump(2) << "\n";
  else if (format == "matrix")
    std::cout << json{{"basis", "index 2g + eps for e_g x^eps"}, {"matrix", io::dense_matrix_json(d, R)}}.dump(2) << "\n";
  else
    std::cout << io::complex_tables_json(R).dump(2) << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quasitriangular structures on k^G #_{sigma,tau} kZ_2"};
  app.require_subcommand(1);
  long budget_space = Budget{}.max_candidates, budget_group = Budget{}.max_group;
  app.add_option("--budget", budget_space, "maximum search-space size before refusing")->check(CLI::PositiveNumber);
  app.add_option("--max-group", budget_group, "maximum |G| before refusing")->check(CLI::PositiveNumber);

  Input in;
  auto add_input = [&](CLI::App* sub, bool positional) {
    if (positional) sub->add_option("data", in.data_path, "data file (JSON)");
    sub->add_option("--preset", in.preset, "named preset instead of a data file");
  };

  bool axioms = false, verify = false, qybe = false;
  std::string kind = "all", r_path, format = "json", out;

  auto* validate_cmd = app.add_subcommand("validate", "cocycle validation and necessary conditions");
  add_input(validate_cmd, true);
  validate_cmd->add_flag("--axioms", axioms, "also run the exhaustive Hopf-axiom check");

  auto* info_cmd = app.add_subcommand("info", "structure summary");
  add_input(info_cmd, true);

  auto* enum_cmd = app.add_subcommand("enumerate", "enumerate quasitriangular structures");
  add_input(enum_cmd, true);
  enum_cmd->add_option("--kind", kind, "trivial|general|special|all|phi-symmetric")
      ->check(CLI::IsMember({"trivial", "general", "special", "all", "phi-symmetric"}));
  enum_cmd->add_flag("--verify", verify, "re-certify each result with the verifier");
  enum_cmd->add_option("--out", out, "directory for one JSON file per R-matrix plus summary.json");

  auto* verify_cmd = app.add_subcommand("verify", "verify a supplied R-matrix");
  verify_cmd->add_option("data", in.data_path, "data file (JSON)");
  verify_cmd->add_option("rmatrix", r_path, "R-matrix file (JSON)");
  verify_cmd->add_option("--preset", in.preset, "named preset instead of a data file");
  verify_cmd->add_flag("--qybe", qybe, "also check the quantum Yang-Baxter equation");

  auto* classify_cmd = app.add_subcommand("classify", "closed-form classification on the K and A families");
  add_input(classify_cmd, true);
  classify_cmd->add_option("--out", out, "directory for one JSON file per R-matrix plus summary.json");

  auto* export_cmd = app.add_subcommand("export", "export data or an R-matrix");
  export_cmd->add_option("data", in.data_path, "data file (JSON)");
  export_cmd->add_option("rmatrix", r_path, "R-matrix file (JSON)");
  export_cmd->add_option("--preset", in.preset, "named preset instead of a data file");
  export_cmd->add_option("--format", format, "json|matrix|complex")->check(CLI::IsMember({"json", "matrix", "complex"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  // a single positional slot is shared, so verify/export take the R file second
  if ((verify_cmd->parsed() || export_cmd->parsed()) && !in.preset.empty() && !in.data_path.empty() && r_path.empty()) {
    r_path = in.data_path;
    in.data_path.clear();
  }

  const Budget budget{budget_group, budget_space};
  try {
    if (validate_cmd->parsed()) return cmd_validate(in, axioms);
    if (info_cmd->parsed()) return cmd_info(in);
    if (enum_cmd->parsed()) return cmd_enumerate(in, kind, verify, budget, out);
    if (verify_cmd->parsed()) return cmd_verify(in, r_path, qybe);
    if (classify_cmd->parsed()) return cmd_classify(in, out);
    if (export_cmd->parsed()) return cmd_export(in, r_path, format);
  } catch (const BudgetExceeded& e) {
    std::cerr << "refused: " << e.what() << " (raise --budget / --max-group)\n";
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const io::FormatError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  }
  return kUsage;
}
