// selfish: command-line front end for the selfishness-level library.
//
//   selfish generate pd_n --param n=3 | selfish level
//   selfish analyze game.json
//   selfish transform game.json --alpha 1 --model C
//   selfish closedform tragedy --param n=3 --witness 1000

#include <chrono>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "selfish/selfish.hpp"

namespace {

using namespace selfish;

struct Options {
  std::size_t cap = kDefaultCellCap;
  bool timings = false;
};

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path);
  if (!in) throw Error(Errc::SyntaxError, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ParamMap parse_params(const std::vector<std::string>& items) {
  ParamMap out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw Error(Errc::ParamOutOfRange, "parameter '" + item + "' is not of the form key=value");
    }
    out[item.substr(0, eq)] = parse_rational(item.substr(eq + 1));
  }
  return out;
}

std::vector<Rational> parse_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(parse_rational(item));
  return out;
}

AltruismModel parse_model(const std::string& m) {
  if (m == "A" || m == "a") return AltruismModel::A;
  if (m == "B" || m == "b") return AltruismModel::B;
  if (m == "C" || m == "c") return AltruismModel::C;
  if (m == "D" || m == "d") return AltruismModel::D;
  throw Error(Errc::ParamOutOfRange, "model must be one of A, B, C, D");
}

/// Wall-clock stopwatch; only reported under --timings.
class Stopwatch {
 public:
  double lap_ms() {
    const auto now = std::chrono::steady_clock::now();
    const double ms = std::chrono::duration<double, std::milli>(now - last_).count();
    last_ = now;
    return ms;
  }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

void emit(Json report, const Options& opt, Stopwatch& clock, double parse_ms) {
  if (opt.timings) report["timings"] = {{"parse_ms", parse_ms}, {"compute_ms", clock.lap_ms()}};
  std::cout << render_report(report);
}

FamilySpec family_from_args(const std::string& name, const std::vector<std::string>& params,
                            const std::string& spec_file) {
  if (name == "compact") {
    if (spec_file.empty()) throw Error(Errc::ParamOutOfRange, "family 'compact' needs --spec <file>");
    return facility_game_from_json(parse_json(read_input(spec_file)));
  }
  return make_family(name, parse_params(params));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Selfishness level of finite strategic games, in exact rational arithmetic"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--cap", opt.cap, "Maximum number of joint strategies to tabulate")->capture_default_str();
  app.add_flag("--timings", opt.timings, "Append wall-clock timings to reports");

  std::string file = "-";
  std::string family;
  std::vector<std::string> params;
  std::string spec_file;

  auto* analyze = app.add_subcommand("analyze", "Equilibria, optima, selfishness level, PoS and PoA");
  analyze->add_option("file", file, "Game document (stdin when omitted or '-')");

  auto* level = app.add_subcommand("level", "Print the selfishness level: 0, p/q or inf");
  level->add_option("file", file, "Game document (stdin when omitted or '-')");

  std::string alpha_text = "0", model_text = "A", shift_text, scale_text;
  bool inverse = false;
  auto* transform = app.add_subcommand("transform", "Apply shift, scale and an altruistic transform");
  transform->add_option("file", file, "Game document (stdin when omitted or '-')");
  transform->add_option("--alpha", alpha_text, "Altruism parameter of the chosen model")->capture_default_str();
  transform->add_option("--model", model_text, "Altruism model A, B, C or D")->capture_default_str();
  transform->add_option("--shift", shift_text, "Add a constant to every value");
  transform->add_option("--scale", scale_text, "Multiply every value by a positive constant");
  transform->add_flag("--inverse", inverse, "Apply the inverse of the model-A transform");

  auto* generate = app.add_subcommand("generate", "Emit a game document for a named family");
  generate->add_option("family", family, "Family name, or 'compact' with --spec")->required();
  generate->add_option("--param", params, "Family parameter key=value (repeatable)");
  generate->add_option("--spec", spec_file, "Compact cost-sharing or congestion description");

  auto* dynamics = app.add_subcommand("dynamics", "Improvement graph: FIP, weak acyclicity, potential");
  dynamics->add_option("file", file, "Game document (stdin when omitted or '-')");

  std::string alphas_text;
  auto* sweep = app.add_subcommand("sweep", "Price of stability of G(alpha) for several alphas");
  sweep->add_option("file", file, "Game document (stdin when omitted or '-')");
  sweep->add_option("--alphas", alphas_text, "Comma-separated alphas, e.g. 0,1/2,1")->required();

  std::string delta_text, witness_text;
  auto* closedform = app.add_subcommand("closedform", "Closed-form level of a family");
  closedform->add_option("family", family, "Family name, or 'compact' with --spec")->required();
  closedform->add_option("--param", params, "Family parameter key=value (repeatable)");
  closedform->add_option("--spec", spec_file, "Compact cost-sharing or congestion description");
  closedform->add_option("--delta-max", delta_text, "Maximum discrepancy for singleton congestion bounds");
  closedform->add_option("--witness", witness_text, "Continuous families: deviation with appeal factor above M");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    Stopwatch clock;
    if (analyze->parsed() || level->parsed() || transform->parsed() || dynamics->parsed() || sweep->parsed()) {
      const Game g = parse_game(read_input(file));
      if (g.cell_count() > opt.cap) {
        throw Error(Errc::ExplosionGuard, std::to_string(g.cell_count()) + " joint strategies exceed the cap");
      }
      const double parse_ms = clock.lap_ms();

      if (analyze->parsed()) {
        emit(analyze_report(g), opt, clock, parse_ms);
      } else if (level->parsed()) {
        std::cout << to_string(selfishness_level(g)) << "\n";
        if (opt.timings) std::cerr << "parse_ms " << parse_ms << "\ncompute_ms " << clock.lap_ms() << "\n";
      } else if (transform->parsed()) {
        Game out = g;
        if (!shift_text.empty()) out = shift(out, parse_rational(shift_text));
        if (!scale_text.empty()) out = scale(out, parse_rational(scale_text));
        const AltruismParam p{parse_model(model_text), parse_rational(alpha_text)};
        if (inverse) {
          if (p.model != AltruismModel::A) throw Error(Errc::ParamOutOfRange, "--inverse supports model A only");
          out = inverse_altruistic(out, p.value);
        } else {
          out = altruistic_model(out, p);
        }
        std::cout << render_game(out);
      } else if (dynamics->parsed()) {
        emit(dynamics_report(g, opt.cap), opt, clock, parse_ms);
      } else {
        emit(sweep_report(g, parse_list(alphas_text)), opt, clock, parse_ms);
      }
      return 0;
    }

    if (generate->parsed()) {
      std::cout << render_game(selfish::generate(family_from_args(family, params, spec_file), opt.cap));
      return 0;
    }

    // closedform
    Json report;
    report["family"] = family;
    if (auto cont = family == "compact" ? std::nullopt : make_continuous(family, parse_params(params))) {
      report["closed_form"] = closed_form_to_json(closed_form_level(*cont));
      if (!witness_text.empty()) {
        const Rational M = parse_rational(witness_text);
        const Rational x = unbounded_witness(*cont, M);
        report["witness"] = {{"bound", rational_to_json(M)},
                             {"deviation", rational_to_json(x)},
                             {"appeal_factor", rational_to_json(witness_af(*cont, x))}};
      }
    } else {
      if (!witness_text.empty()) throw Error(Errc::ParamOutOfRange, "--witness applies to continuous families");
      ClosedFormOptions cf;
      cf.cap = opt.cap;
      if (!delta_text.empty()) cf.delta_max = parse_rational(delta_text);
      report["closed_form"] = closed_form_to_json(closed_form_level(family_from_args(family, params, spec_file), cf));
    }
    emit(std::move(report), opt, clock, 0.0);
    return 0;
  } catch (const Error& e) {
    std::cerr << "selfish: " << e.what() << "\n";
    return e.code() == Errc::ExplosionGuard ? 3 : 2;
  } catch (const std::exception& e) {
    std::cerr << "selfish: " << e.what() << "\n";
    return 1;
  }
}
