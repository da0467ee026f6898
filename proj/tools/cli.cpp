#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "hahnkit/basis.hpp"
#include "hahnkit/duals.hpp"
#include "hahnkit/io.hpp"
#include "hahnkit/matclass.hpp"
#include "hahnkit/spaces.hpp"
#include "hahnkit/verify.hpp"

namespace hahnkit::cli {

namespace {

using io::Json;

struct Common {
  std::optional<Index> horizon;
  std::optional<int> doublings;
  std::string config;
  std::string out;
  std::string format = "json";
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--horizon", c.horizon, "Base horizon N (evaluation points N, 2N, ..., 2^d N)")
      ->check(CLI::PositiveNumber);
  sub->add_option("--doublings", c.doublings, "Number of horizon doublings d")->check(CLI::Range(0, 30));
  sub->add_option("--config", c.config, "Estimator config JSON (falls back to $HAHNKIT_CONFIG)");
  sub->add_option("--out", c.out, "Write the report here instead of stdout");
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
}

EstimatorConfig resolve_config(const Common& c) {
  EstimatorConfig cfg;
  std::string path = c.config;
  if (path.empty())
    if (const char* env = std::getenv("HAHNKIT_CONFIG"); env && *env) path = env;
  if (!path.empty()) cfg = io::load_config(path, cfg);
  if (c.horizon) cfg.base_horizon = *c.horizon;
  if (c.doublings) cfg.doublings = *c.doublings;
  return io::config_from_json(io::to_json(cfg), cfg);
}

int status_code(Status s) {
  switch (s) {
    case Status::Holds: return kHolds;
    case Status::Fails: return kFails;
    case Status::Inconclusive: return kInconclusive;
  }
  return kInconclusive;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

std::string csv_number(double v) { return Json(v).dump(); }

std::string csv_witness(const std::optional<Index>& w) { return w ? std::to_string(*w) : std::string(); }

using Rows = std::vector<std::vector<std::string>>;

std::string render_csv(const std::vector<std::string>& header, const Rows& rows) {
  std::ostringstream ss;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) ss << (i ? "," : "") << csv_field(cells[i]);
    ss << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return ss.str();
}

void emit(const Common& c, const std::string& text, std::ostream& out) {
  if (c.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw InputError("cannot write '" + c.out + "'");
  f << text;
}

void emit(const Common& c, const Json& j, const std::vector<std::string>& header, const Rows& rows,
          std::ostream& out) {
  emit(c, c.format == "csv" ? render_csv(header, rows) : j.dump(2) + "\n", out);
}

std::vector<std::string> verdict_cells(const Verdict& v) {
  return {to_string(v.status), csv_number(v.value), csv_number(v.margin_or_trend), csv_witness(v.witness), v.note};
}

/// "lp" and "hp" (also inside int:...) take the --p exponent when written bare.
SpaceId space_with_exponent(const std::string& text, double p) {
  std::string t = text;
  const std::string inner = t.rfind("int:", 0) == 0 ? t.substr(4) : t;
  if (inner == "lp" || inner == "hp" || inner == "bvp" || inner == "bv0p") t += ":" + format_exponent(p);
  return parse_space(t);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sequence-space and matrix-class toolkit for the Hahn spaces h and h_p", "hahnkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "hahnkit 0.1.0");

  Common common;
  std::string seq_path, matrix_path, space_text, from_text, to_text, set_name, suite = "all";
  Index k = 1, count = 1, order = 1;
  double p = 2.0;
  std::uint64_t seed = 42;
  bool strict_paper = false, no_timestamp = false;

  auto* eval = app.add_subcommand("eval", "Evaluate a sequence at k, k+1, ..., k+count-1");
  eval->add_option("--seq", seq_path, "Sequence JSON")->required();
  eval->add_option("--k", k, "First index")->check(CLI::PositiveNumber);
  eval->add_option("--count", count, "Number of values")->check(CLI::Range(Index{1}, Index{1} << 22));
  add_common(eval, common);

  auto* norm_cmd = app.add_subcommand("norm", "Norm of a sequence in a space");
  norm_cmd->add_option("--space", space_text, "Space, e.g. hp:2, lp:1.5, h, bs")->required();
  norm_cmd->add_option("--seq", seq_path, "Sequence JSON")->required();
  add_common(norm_cmd, common);

  auto* member_cmd = app.add_subcommand("member", "Membership verdict of a sequence in a space");
  member_cmd->add_option("--space", space_text, "Space, e.g. hp:2, c0, int:bvp:2")->required();
  member_cmd->add_option("--seq", seq_path, "Sequence JSON")->required();
  add_common(member_cmd, common);

  auto* expand_cmd = app.add_subcommand("expand", "Expansion in the basis b^(k) up to order m");
  expand_cmd->add_option("--seq", seq_path, "Sequence JSON")->required();
  expand_cmd->add_option("--m", order, "Expansion order m")->required()->check(CLI::PositiveNumber);
  expand_cmd->add_option("--p", p, "Exponent of the error norm (p > 1)")->check(CLI::PositiveNumber);
  add_common(expand_cmd, common);

  auto* dual_cmd = app.add_subcommand("dual", "Membership in a dual set");
  dual_cmd->add_option("--set", set_name, "d1 (alpha dual of hp), d2 (alpha dual of h), d3 (beta dual of hp), sigma_inf")
      ->required()
      ->check(CLI::IsMember({"d1", "d2", "d3", "sigma_inf"}));
  dual_cmd->add_option("--p", p, "Exponent p (d1, d3)")->check(CLI::PositiveNumber);
  dual_cmd->add_option("--seq", seq_path, "Sequence JSON")->required();
  add_common(dual_cmd, common);

  auto* classify_cmd = app.add_subcommand("classify", "Evaluate the conditions of a matrix class");
  classify_cmd->add_option("--from", from_text, "Source space")->required();
  classify_cmd->add_option("--to", to_text, "Target space")->required();
  classify_cmd->add_option("--matrix", matrix_path, "Matrix JSON")->required();
  classify_cmd->add_option("--p", p, "Exponent p for lp / hp sides")->check(CLI::PositiveNumber);
  add_common(classify_cmd, common);

  auto* verify_cmd = app.add_subcommand("verify", "Run the seeded property suites");
  verify_cmd->add_option("--suite", suite, "Suite")->check(CLI::IsMember(suite_names()));
  verify_cmd->add_option("--seed", seed, "Random seed");
  verify_cmd->add_flag("--strict-paper", strict_paper, "Treat findings as failures");
  verify_cmd->add_flag("--no-timestamp", no_timestamp, "Omit wall time for byte-identical reports");
  add_common(verify_cmd, common);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << app.version() << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  try {
    const EstimatorConfig cfg = resolve_config(common);
    const Horizon h = cfg.horizon();

    if (eval->parsed()) {
      const Sequence x = io::load_sequence(seq_path);
      Json j{{"schema", io::kSchema}, {"values", Json::array()}};
      Rows rows;
      for (Index i = k; i < k + count; ++i) {
        const double v = x.eval(i);
        j["values"].push_back(Json{{"k", i}, {"value", v}});
        rows.push_back({std::to_string(i), csv_number(v)});
      }
      emit(common, j, {"k", "value"}, rows, out);
      return kHolds;
    }

    if (norm_cmd->parsed()) {
      const SpaceId sp = parse_space(space_text);
      const Sequence x = io::load_sequence(seq_path);
      try {
        const NormReport r = norm(x, sp, h, cfg);
        Json j = io::to_json(r);
        j["horizons"] = io::horizons_json(h);
        emit(common, j, {"space", "value", "horizon_used", "exact"},
             {{to_string(sp), csv_number(r.value), std::to_string(r.horizon_used), r.exact ? "true" : "false"}}, out);
        return kHolds;
      } catch (const DivergenceError& e) {
        Json j{{"schema", io::kSchema}, {"space", to_string(sp)}, {"error", e.what()},
               {"verdict", io::to_json(e.verdict())}, {"horizons", io::horizons_json(h)}};
        auto cells = verdict_cells(e.verdict());
        cells.insert(cells.begin(), to_string(sp));
        emit(common, j, {"space", "status", "value", "margin_or_trend", "witness", "note"}, {cells}, out);
        return kFails;
      }
    }

    if (member_cmd->parsed()) {
      const SpaceId sp = parse_space(space_text);
      const Verdict v = member(io::load_sequence(seq_path), sp, h, cfg);
      Json j{{"schema", io::kSchema}, {"space", to_string(sp)}, {"verdict", io::to_json(v)},
             {"horizons", io::horizons_json(h)}};
      auto cells = verdict_cells(v);
      cells.insert(cells.begin(), to_string(sp));
      emit(common, j, {"space", "status", "value", "margin_or_trend", "witness", "note"}, {cells}, out);
      return status_code(v.status);
    }

    if (expand_cmd->parsed()) {
      const auto pq = ExponentPair::from_p(p);
      const Sequence x = io::load_sequence(seq_path);
      const Expansion e = expand(x, order);
      double error = 0.0;
      int code = kHolds;
      std::string note;
      try {
        error = reconstruction_error(x, order, pq, h, cfg);
      } catch (const DivergenceError& d) {
        error = d.verdict().value;
        note = d.what();
        code = kFails;
      }
      Json j{{"schema", io::kSchema},
             {"order", order},
             {"p", p},
             {"coefficients", io::to_json(e.coefficients)},
             {"reconstruction", io::to_json(e.reconstruction)},
             {"error", error},
             {"horizons", io::horizons_json(h)}};
      if (!note.empty()) j["note"] = note;
      Rows rows;
      for (Index i = 1; i <= order; ++i) {
        const double xi = x.eval(i);
        const double ri = e.reconstruction.eval(i);
        rows.push_back({std::to_string(i), csv_number(e.coefficients.eval(i)), csv_number(ri), csv_number(xi),
                        csv_number(std::fabs(xi - ri))});
      }
      emit(common, j, {"k", "lambda", "reconstruction", "x", "error"}, rows, out);
      return code;
    }

    if (dual_cmd->parsed()) {
      const Sequence a = io::load_sequence(seq_path);
      Verdict v;
      if (set_name == "d1")
        v = in_alpha_dual(a, SpaceId::hp(p), h, cfg);
      else if (set_name == "d2")
        v = in_alpha_dual(a, SpaceId::h(), h, cfg);
      else if (set_name == "d3")
        v = in_beta_dual_hp(a, ExponentPair::from_p(p), h, cfg);
      else
        v = in_sigma_inf(a, h, cfg);
      Json j{{"schema", io::kSchema}, {"set", set_name}, {"p", p}, {"verdict", io::to_json(v)},
             {"horizons", io::horizons_json(h)}};
      auto cells = verdict_cells(v);
      cells.insert(cells.begin(), set_name);
      emit(common, j, {"set", "status", "value", "margin_or_trend", "witness", "note"}, {cells}, out);
      return status_code(v.status);
    }

    if (classify_cmd->parsed()) {
      const ClassId cls = make_class(space_with_exponent(from_text, p), space_with_exponent(to_text, p), p);
      const ConditionReport r = classify(io::load_matrix(matrix_path), cls, h, cfg);
      Rows rows;
      for (const auto& c : r.conditions) {
        auto cells = verdict_cells(c.verdict);
        cells.insert(cells.begin(), {condition_id(c.tag), condition_formula(c.tag)});
        rows.push_back(cells);
      }
      auto overall = verdict_cells(r.overall);
      overall.insert(overall.begin(), {"overall", to_string(cls)});
      rows.push_back(overall);
      emit(common, io::to_json(r), {"id", "formula", "status", "value", "margin_or_trend", "witness", "note"}, rows,
           out);
      return status_code(r.overall.status);
    }

    VerifyOptions opt;
    opt.seed = seed;
    opt.config = cfg;
    opt.strict_paper = strict_paper;
    const VerifyReport r = run_suite(suite, opt);
    Rows rows;
    for (const auto& pr : r.results) rows.push_back({pr.suite, pr.name, to_string(pr.outcome), pr.detail});
    emit(common, to_json(r, !no_timestamp), {"suite", "name", "outcome", "detail"}, rows, out);
    return r.exit_code();
  } catch (const DivergenceError& e) {
    err << "error: " << e.what() << '\n';
    return kFails;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace hahnkit::cli
