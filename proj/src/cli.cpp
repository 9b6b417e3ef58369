#include "langdual/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "langdual/json_io.hpp"

namespace langdual {

namespace {

struct InputOptions {
  std::string type;
  std::string input;
  unsigned jobs = 1;
};

void add_input_options(CLI::App* sub, InputOptions& opts) {
  auto* t = sub->add_option("--type", opts.type, "Dynkin descriptor, e.g. A1:sc, D4xT1:adj, T2");
  auto* i = sub->add_option("--input", opts.input, "root datum JSON file");
  t->excludes(i);
  sub->add_option("--jobs", opts.jobs, "worker threads")->check(CLI::PositiveNumber);
}

// Loads and validates the datum; on failure reports to err and returns nullopt.
std::optional<RootDatum> load_datum(const InputOptions& opts, std::ostream& err) {
  RootDatum d;
  try {
    if (!opts.type.empty()) {
      d = build_from_dynkin(parse_descriptor(opts.type));
    } else if (!opts.input.empty()) {
      std::ifstream in(opts.input);
      if (!in) throw InputError("cannot open " + opts.input);
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(in);
      } catch (const nlohmann::json::parse_error& e) {
        throw InputError(std::string("invalid JSON: ") + e.what());
      }
      d = datum_from_json(j);
    } else {
      throw InputError("one of --type or --input is required");
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return std::nullopt;
  }
  const AxiomReport rep = validate(d);
  if (!rep.ok()) {
    err << "error: invalid root datum\n" << rep.summary() << "\n";
    return std::nullopt;
  }
  return d;
}

Json int_matrix_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).get_si());
    rows.push_back(row);
  }
  return rows;
}

Json rat_matrix_json(const RatMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

// Writes to --out when given, otherwise to out.
bool emit(const Json& j, const std::string& path, std::ostream& out, std::ostream& err) {
  const std::string text = j.dump(2) + "\n";
  if (path.empty()) {
    out << text;
    return true;
  }
  std::ofstream f(path);
  if (!f) {
    err << "error: cannot write " << path << "\n";
    return false;
  }
  f << text;
  return true;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Langlands duals of root data and exact checks of T-duality with Cartan flux", "langdual"};
  app.require_subcommand(1, 1);

  InputOptions info_opts, dual_opts, verify_opts, cartan_opts, export_opts;
  std::string dual_out, export_out;
  std::vector<long> scales;
  std::size_t rank_guard = 6;
  bool no_timing = false;

  auto* info = app.add_subcommand("info", "rank, roots, ADE flag, Cartan matrix and fundamental group");
  add_input_options(info, info_opts);
  auto* dual = app.add_subcommand("dualize", "write the Langlands dual root datum");
  add_input_options(dual, dual_opts);
  dual->add_option("--out", dual_out, "output file (default stdout)");
  auto* verify = app.add_subcommand("verify", "run every check of the T-duality theorem");
  add_input_options(verify, verify_opts);
  verify->add_option("--scale", scales, "also check n*F against n*H, n*H^dual (repeatable)");
  verify->add_option("--max-rank-guard", rank_guard, "refuse semisimple rank above this")->capture_default_str();
  verify->add_flag("--no-timing", no_timing, "omit timing fields");
  auto* cartan = app.add_subcommand("cartan", "Cartan matrix and simple roots");
  add_input_options(cartan, cartan_opts);
  auto* exp = app.add_subcommand("export-algebra", "structure constants and Killing matrix");
  add_input_options(exp, export_opts);
  exp->add_option("--out", export_out, "output file (default stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kInputError;
  }

  try {
    if (*info) {
      auto d = load_datum(info_opts, err);
      if (!d) return kInputError;
      const auto pi1 = fundamental_group(*d);
      const auto ps = positive_system(*d);
      Json j;
      j["label"] = d->label;
      j["type"] = identify_type(*d);
      j["rank"] = d->rank;
      j["roots"] = d->num_roots();
      j["ade"] = is_ade(*d);
      j["cartan"] = int_matrix_json(cartan_matrix(*d, ps));
      j["pi1"] = fundamental_group_to_json(pi1)["torsion"];
      j["free_rank"] = pi1.free_rank;
      return emit(j, "", out, err) ? kPass : kInputError;
    }
    if (*dual) {
      auto d = load_datum(dual_opts, err);
      if (!d) return kInputError;
      return emit(datum_to_json(canonical_order(dualize(*d))), dual_out, out, err) ? kPass : kInputError;
    }
    if (*cartan) {
      auto d = load_datum(cartan_opts, err);
      if (!d) return kInputError;
      const auto ps = positive_system(*d);
      Json j;
      j["type"] = identify_type(*d);
      j["simple"] = ps.simple;
      j["cartan"] = int_matrix_json(cartan_matrix(*d, ps));
      return emit(j, "", out, err) ? kPass : kInputError;
    }
    if (*exp) {
      auto d = load_datum(export_opts, err);
      if (!d) return kInputError;
      const ReductiveLieAlgebra l(*d, export_opts.jobs);
      Json j;
      j["label"] = d->label;
      j["dim"] = l.dim();
      j["labels"] = l.algebra()->labels();
      j["brackets"] = Json::parse(structure_constants_json(l))["pairs"];
      j["killing"] = rat_matrix_json(l.killing_matrix());
      return emit(j, export_out, out, err) ? kPass : kInputError;
    }
    if (*verify) {
      auto d = load_datum(verify_opts, err);
      if (!d) return kInputError;
      for (long n : scales)
        if (n == 0) {
          err << "error: --scale must be nonzero\n";
          return kInputError;
        }
      const std::size_t ss = semisimple_rank(*d);
      if (ss > rank_guard) {
        err << "error: semisimple rank " << ss << " exceeds --max-rank-guard " << rank_guard << "\n";
        return kInputError;
      }
      const VerificationReport rep = verify_all(*d, {scales, verify_opts.jobs});
      if (!emit(report_to_json(rep, !no_timing), "", out, err)) return kInputError;
      if (!rep.overall()) {
        for (const auto& c : rep.checks)
          if (!c.pass) err << "check failed: " << c.name << (c.witness ? " at " + *c.witness : "") << "\n";
        return kMathFailure;
      }
      return kPass;
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << "\n";
    return kMathFailure;
  }
  return kInputError;
}

}  // namespace langdual
