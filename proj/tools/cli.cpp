#include "cli.hpp"

#include <algorithm>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "nhfs/error.hpp"
#include "nhfs/fourier.hpp"
#include "nhfs/io.hpp"
#include "nhfs/recovery.hpp"

namespace nhfs::cli {

namespace {

struct Options {
  std::string model, input, reference, estimate, out, model_out;
  std::optional<double> period;
  std::string indices;
  bool include_c0 = false;
  double quad_tol = 1e-12;
  ReconstructionConfig config;
};

void emit(const Options& o, std::ostream& out, const std::string& text) {
  if (o.out.empty()) {
    out << text;
  } else {
    io::write_file(o.out, text);
  }
}

std::vector<int> requested_indices(const Options& o) {
  std::vector<int> idx = io::parse_indices(o.indices);
  if (o.include_c0 && std::find(idx.begin(), idx.end(), 0) == idx.end()) idx.insert(idx.begin(), 0);
  return idx;
}

int cmd_synth(const Options& o, std::ostream& out, bool quadrature) {
  const io::ModelFile mf = io::parse_model(io::read_file(o.model));
  const double P = o.period.value_or(mf.period);
  const std::vector<int> idx = requested_indices(o);
  FourierData data;
  if (!quadrature) {
    data = coefficients(mf.model, P, idx);
  } else {
    data.period = P;
    for (int n : idx) {
      const Complex c = coefficient_quadrature(mf.model, P, n, o.quad_tol);
      if (n == 0) {
        data.c0 = c;
      } else {
        data.entries.push_back({n, c});
      }
    }
  }
  emit(o, out, io::coefficients_to_csv(data));
  return kOk;
}

int cmd_reconstruct(const Options& o, std::ostream& out, std::ostream& err) {
  const FourierData data = io::parse_coefficients(io::read_file(o.input), *o.period);
  try {
    const ReconstructionReport rep = reconstruct(data, o.config);
    emit(o, out, io::report_to_json(rep, data.period).dump(2) + "\n");
    if (!o.model_out.empty()) {
      io::write_file(o.model_out, io::model_to_json(rep.model, data.period).dump(2) + "\n");
    }
    for (const auto& w : rep.warnings) err << "warning: " << w << "\n";
    return rep.aaa.converged ? kOk : kNotConverged;
  } catch (const ReconstructionError& e) {
    const nlohmann::json j = {{"error", to_string(e.code())},
                              {"message", e.what()},
                              {"iterations", e.aaa().iterations},
                              {"selection_order", e.aaa().selection_order},
                              {"warnings", e.warnings()}};
    emit(o, out, j.dump(2) + "\n");
    throw;
  }
}

int cmd_compare(const Options& o, std::ostream& out, std::ostream& err) {
  const io::ModelFile ref = io::parse_model(io::read_file(o.reference));
  const io::ModelFile est = io::parse_model(io::read_file(o.estimate));
  const ModelComparison cmp = compare_models(ref.model, est.model);
  emit(o, out, io::comparison_to_json(cmp).dump(2) + "\n");
  if (cmp.term_count_mismatch) {
    err << "error: " << to_string(ErrorCode::TermCountMismatch) << ": reference has "
        << ref.model.terms.size() << " terms, estimate has " << est.model.terms.size() << "\n";
    return kNotConverged;
  }
  return kOk;
}

void add_fit_flags(CLI::App* sub, Options& o) {
  auto* positive = sub->add_option("--tol", o.config.tol, "AAA stopping tolerance");
  positive->check(CLI::PositiveNumber);
  sub->add_option("--mmax", o.config.mmax, "maximum support size (0: automatic)")
      ->check(CLI::NonNegativeNumber);
  sub->add_option("--weight-eps", o.config.weight_eps, "relative weight pruning threshold")
      ->check(CLI::PositiveNumber);
  sub->add_option("--residue-eps", o.config.residue_eps, "Froissart residue threshold")
      ->check(CLI::PositiveNumber);
  sub->add_option("--periodic-eps", o.config.periodic_eps, "periodic detection threshold")
      ->check(CLI::PositiveNumber);
  sub->add_option("--imag-eps", o.config.imag_eps, "tolerated imaginary part of poles")
      ->check(CLI::PositiveNumber);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Recover sparse non-harmonic Fourier sums from Fourier coefficients"};
  app.require_subcommand(1);
  Options o;

  auto* synth = app.add_subcommand("synth", "closed-form Fourier coefficients of a model");
  auto* coeffs = app.add_subcommand("coeffs", "Fourier coefficients by adaptive quadrature");
  for (auto* sub : {synth, coeffs}) {
    sub->add_option("model", o.model, "model JSON")->required();
    sub->add_option("--period", o.period, "period P (default: the model file's P)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--indices", o.indices, "e.g. 1..40 or 1,2,5")->required();
    sub->add_flag("--include-c0", o.include_c0, "also emit n = 0");
    sub->add_option("--out", o.out, "output file (default: stdout)");
  }
  coeffs->add_option("--quad-tol", o.quad_tol, "quadrature tolerance")->check(CLI::PositiveNumber);

  auto* rec = app.add_subcommand("reconstruct", "recover a model from coefficients");
  rec->add_option("input", o.input, "coefficient CSV")->required();
  rec->add_option("--period", o.period, "period P")->required()->check(CLI::PositiveNumber);
  rec->add_option("--out", o.out, "report JSON (default: stdout)");
  rec->add_option("--model-out", o.model_out, "recovered model JSON");
  add_fit_flags(rec, o);

  auto* cmp = app.add_subcommand("compare", "parameter errors between two models");
  cmp->add_option("reference", o.reference, "reference model JSON")->required();
  cmp->add_option("estimate", o.estimate, "estimated model JSON")->required();
  cmp->add_option("--out", o.out, "output file (default: stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  try {
    if (synth->parsed()) return cmd_synth(o, out, false);
    if (coeffs->parsed()) return cmd_synth(o, out, true);
    if (rec->parsed()) return cmd_reconstruct(o, out, err);
    return cmd_compare(o, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return is_input_error(e.code()) ? kInputError : kNumericalError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace nhfs::cli
