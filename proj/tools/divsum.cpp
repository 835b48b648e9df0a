#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "divsum/experiments.hpp"
#include "divsum/float_sum.hpp"
#include "divsum/functional.hpp"
#include "divsum/matfunc.hpp"
#include "divsum/matrix_io.hpp"
#include "divsum/sequential.hpp"
#include "divsum/series.hpp"

using namespace divsum;

namespace {

std::pair<std::string, std::string> split_tag(const std::string& tag) {
  const auto c = tag.find(':');
  if (c == std::string::npos) return {tag, ""};
  return {tag.substr(0, c), tag.substr(c + 1)};
}

double parse_real(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::parse, "bad number '" + s + "' in " + what);
  }
}

MatrixSeries make_series(const std::string& tag, const CMatrix& x, const std::string& coeff_file, std::size_t terms) {
  if (tag == "neumann") return neumann_terms(x);
  if (tag == "fourier-square") return square_wave_fourier_terms(x);
  if (tag == "dirichlet-mobius") return dirichlet_mobius_terms(x, std::max<std::size_t>(terms + 1, 2));
  if (tag == "hadamard") return hadamard_power_terms(x);
  if (tag == "power-coeffs") {
    if (coeff_file.empty()) throw Error(ErrorCode::invalid_input, "power-coeffs needs --coeffs <file>");
    return coeff_power_terms(x, read_complex_list_json(coeff_file));
  }
  throw Error(ErrorCode::parse, "unknown series tag '" + tag + "'");
}

ScalarSeqWeights make_scalar_weights(const std::string& tag) {
  const auto [name, arg] = split_tag(tag);
  if (name == "conventional") return conventional_weights();
  if (name == "cesaro") return cesaro_scalar_weights();
  if (name == "euler") return euler_scalar_weights(parse_real(arg, "--weights"));
  throw Error(ErrorCode::parse, "unknown weights tag '" + tag + "'");
}

CoeffOracle make_coeffs(const std::string& tag) {
  const auto [name, arg] = split_tag(tag);
  if (name == "exp") return exp_coeffs();
  if (name == "neumann") return neumann_coeffs();
  if (name == "file") return list_coeffs(read_complex_list_json(arg));
  throw Error(ErrorCode::parse, "unknown coefficient tag '" + tag + "'");
}

void write_report(std::ostream& os, const SumReport& r) {
  os << "{\"method\": \"" << r.method << "\", \"terms_used\": " << r.terms_used
     << ", \"converged\": " << (r.converged ? "true" : "false")
     << ", \"last_increment_norm\": \"" << format_double(r.last_increment_norm) << "\""
     << ", \"value\": " << matrix_to_json_text(r.value) << "}\n";
}

void emit(const std::string& out, const std::function<void(std::ostream&)>& body) {
  if (out.empty() || out == "-") {
    body(std::cout);
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw Error(ErrorCode::invalid_input, "cannot open " + out);
  body(f);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Summation of divergent and convergent matrix series"};
  app.require_subcommand(1);

  // experiments
  ExperimentSpec spec;
  std::string out, format = "csv", timings;
  const std::vector<std::pair<std::string, std::string>> experiments{
      {"gibbs", "matrix Fourier series of the square wave and its Cesaro means"},
      {"neumann-extension", "Euler and strong Borel sums of Neumann series outside the unit disk"},
      {"euler-accuracy", "truncated Taylor versus Euler sums on bidiagonal matrices"},
      {"dirichlet-lambert", "Lambert sums of the matrix Moebius-Dirichlet series"},
      {"floatsum-bench", "recursive versus compensated summation"}};
  for (const auto& [id, help] : experiments) {
    CLI::App* sub = app.add_subcommand(id, help);
    sub->add_option("--dim", spec.dim, "matrix dimension");
    sub->add_option("--terms", spec.terms, "number of terms");
    sub->add_option("--count", spec.count, "matrices per grid point");
    sub->add_option("--rho", spec.rhos, "Euler parameters")->delimiter(',');
    sub->add_option("--alpha-grid", spec.alphas, "probabilities of a negative diagonal")->delimiter(',');
    sub->add_option("--delta", spec.deltas, "distances ||X - I||")->delimiter(',');
    sub->add_option("--x-exponents", spec.x_exponents, "m in x = 1 - 2^-m")->delimiter(',');
    sub->add_option("--seed", spec.seed, "random seed");
    sub->add_option("--out", out, "output path (default stdout)");
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--timings", timings, "write wall-clock timings to this CSV");
    sub->callback([&, id = id]() {
      spec.id = id;
      const ExperimentResult r = run_experiment(spec);
      emit(out, [&](std::ostream& os) {
        if (format == "json") r.table.write_json(os);
        else r.table.write_csv(os);
      });
      if (!timings.empty()) r.timings.write(timings, "csv");
    });
  }

  // sum
  std::string series_tag, method = "conventional", matrix_path, coeff_file, kernel_tag = "kahan";
  std::size_t terms = 1000;
  double tol = 1e-12;
  std::vector<double> limit_points;
  std::optional<double> quad_T, quad_tol;
  CLI::App* sum = app.add_subcommand("sum", "sum a matrix series with a chosen method");
  sum->add_option("--series", series_tag, "neumann | fourier-square | dirichlet-mobius | hadamard | power-coeffs")
      ->required();
  sum->add_option("--method", method,
                  "conventional | cesaro:<j> | norlund:<file> | euler:<rho> | abel | abelian:<file> | lambert | "
                  "wborel | sborel | mittag:<alpha>");
  sum->add_option("--matrix", matrix_path, "matrix JSON")->required();
  sum->add_option("--coeffs", coeff_file, "coefficient list for power-coeffs");
  sum->add_option("--terms", terms, "number of terms");
  sum->add_option("--kernel", kernel_tag, "recursive | block:<b> | kahan | mixed:<b>:<fast>:<accurate>");
  sum->add_option("--tol", tol, "convergence tolerance");
  sum->add_option("--limit-points", limit_points, "evaluation abscissae for limit methods")->delimiter(',');
  sum->add_option("--quad-T", quad_T, "Borel quadrature truncation");
  sum->add_option("--quad-tol", quad_tol, "Borel quadrature tolerance");
  sum->add_option("--out", out, "output path (default stdout)");
  sum->callback([&]() {
    const CMatrix x = read_matrix_json(matrix_path);
    const MatrixSeries s = make_series(series_tag, x, coeff_file, terms);
    const KernelSpec kernel = parse_kernel(kernel_tag);
    const auto [name, arg] = split_tag(method);
    auto schedule = [&](LimitSchedule fallback) {
      if (limit_points.empty()) return fallback;
      LimitSchedule ls;
      ls.points = limit_points;
      return ls;
    };
    QuadratureSpec q;
    if (quad_T) q.upper = *quad_T;
    if (quad_tol) q.tol = *quad_tol;
    DampedSumOptions opt;
    SumReport r;
    if (name == "conventional") {
      r = sum_terms(s, terms, tol, kernel, "conventional");
    } else if (name == "cesaro") {
      r = arg.empty() || arg == "1" ? cesaro_sum(s, terms, tol, kernel)
                                    : norlund_sum(s, cesaro_weights(std::stoul(arg), s.dim), terms, tol);
    } else if (name == "norlund") {
      r = norlund_sum(s, norlund_from_list(read_matrix_list_json(arg)), terms, tol);
    } else if (name == "euler") {
      const CMatrix p = parse_real(arg, "--method") * CMatrix::Identity(s.dim, s.dim);
      r = series_tag == "neumann" ? sum_terms(neumann_euler_terms(x, p), terms, tol, kernel, "euler")
                                  : euler_sum(s, p, terms, tol, kernel);
    } else if (name == "abel") {
      r = abel_sum(s, schedule(LimitSchedule::toward_one()), opt);
    } else if (name == "abelian") {
      r = abelian_means_sum(s, abelian_from_list(read_matrix_list_json(arg)), schedule(LimitSchedule::toward_zero()),
                            opt);
    } else if (name == "lambert") {
      r = lambert_sum(s, schedule(LimitSchedule::toward_one()), opt);
    } else if (name == "wborel") {
      r = weak_borel_sum(s, schedule(LimitSchedule::toward_infinity()), opt);
    } else if (name == "sborel") {
      r = strong_borel_sum(s, q);
    } else if (name == "mittag") {
      r = mittag_leffler_sum(s, parse_real(arg, "--method"), q);
    } else {
      throw Error(ErrorCode::parse, "unknown method tag '" + method + "'");
    }
    r.method = method;
    emit(out, [&](std::ostream& os) { write_report(os, r); });
  });

  // matfunc
  std::string algo, weights_tag = "conventional", coeffs_tag = "exp";
  CLI::App* mf = app.add_subcommand("matfunc", "matrix function with a summation-augmented algorithm");
  mf->add_option("--algo", algo, "pade:<m>:<n> | parlett:<n>")->required();
  mf->add_option("--weights", weights_tag, "conventional | cesaro | euler:<rho>");
  mf->add_option("--coeffs", coeffs_tag, "exp | neumann | file:<path>");
  mf->add_option("--matrix", matrix_path, "matrix JSON")->required();
  mf->add_option("--out", out, "output path (default stdout)");
  mf->callback([&]() {
    const CMatrix x = read_matrix_json(matrix_path);
    const ScalarSeqWeights w = make_scalar_weights(weights_tag);
    const CoeffOracle a = make_coeffs(coeffs_tag);
    std::stringstream ss(algo);
    std::string kind, p1, p2;
    std::getline(ss, kind, ':');
    std::getline(ss, p1, ':');
    std::getline(ss, p2, ':');
    CMatrix f;
    if (kind == "pade" && !p1.empty() && !p2.empty()) {
      f = pade_with_summation(x, std::stoul(p1), std::stoul(p2), a, w);
    } else if (kind == "parlett" && !p1.empty()) {
      f = schur_parlett_with_summation(x, std::stoul(p1), a, w);
    } else {
      throw Error(ErrorCode::parse, "unknown algorithm tag '" + algo + "'");
    }
    emit(out, [&](std::ostream& os) { os << matrix_to_json_text(f) << '\n'; });
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
