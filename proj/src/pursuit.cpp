#include "mips/pursuit.hpp"

#include <cmath>

#include "mips/oracle.hpp"

namespace mips {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) sum += a[j] * b[j];
  return sum;
}

}  // namespace

std::vector<PursuitStep> matching_pursuit(const MipsInstance& instance,
                                          std::size_t iterations,
                                          PursuitSolver solver,
                                          const BanditConfig& config,
                                          SampleLedger& search,
                                          SampleLedger* projection,
                                          double stop_threshold) {
  const std::size_t n = instance.num_atoms();
  const std::size_t d = instance.dim();
  if (iterations < 1) {
    throw MipsError(ErrorKind::invalid_argument, "iterations must be >= 1");
  }
  SampleLedger local_projection;
  SampleLedger& proj = projection ? *projection : local_projection;

  // Dictionary check: squared norms, n*d multiplications.
  std::vector<double> norms_sq(n);
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      double v = instance.atoms()(i, j);
      sum += v * v;
    }
    if (sum == 0.0) {
      throw MipsError(ErrorKind::invalid_dictionary,
                      "atom " + std::to_string(i) + " has zero norm");
    }
    norms_sq[i] = sum;
  }
  proj.add(static_cast<std::uint64_t>(n) * d);

  // Signed search over atoms and their negations realizes selection by
  // absolute inner product without touching the solver.
  std::vector<double> augmented(2 * n * d);
  for (std::size_t i = 0; i < n; ++i) {
    auto row = instance.atoms().row(i);
    for (std::size_t j = 0; j < d; ++j) {
      augmented[i * d + j] = row[j];
      augmented[(n + i) * d + j] = -row[j];
    }
  }

  std::vector<double> residual(instance.query().begin(),
                               instance.query().end());
  double r0 = std::sqrt(dot(residual, residual));
  proj.add(d);

  MipsInstance problem(Matrix(2 * n, d, std::move(augmented)), residual);

  std::vector<PursuitStep> steps;
  steps.reserve(iterations);
  BanditConfig step_config = config;
  if (solver == PursuitSolver::bandit_alpha) step_config.beta = kInfinity;

  for (std::size_t step = 0; step < iterations; ++step) {
    std::uint64_t before = search.mults();
    std::size_t winner;
    if (solver == PursuitSolver::naive) {
      winner = naive_mips(problem, search).best();
    } else {
      CoordinateSampler sampler = make_sampler(problem, step_config, &proj);
      winner = bandit_mips(problem, step_config, sampler, search).result.best();
    }
    std::size_t atom = winner < n ? winner : winner - n;

    // Exact projection: numerator and denominator are both recomputed over
    // all d coordinates.
    double numer = dot(residual, instance.atoms().row(atom));
    double denom = dot(instance.atoms().row(atom), instance.atoms().row(atom));
    proj.add(2 * static_cast<std::uint64_t>(d));
    double coefficient = numer / denom;

    auto row = instance.atoms().row(atom);
    for (std::size_t j = 0; j < d; ++j) residual[j] -= coefficient * row[j];
    proj.add(d);
    double residual_norm = std::sqrt(dot(residual, residual));
    proj.add(d);

    steps.push_back(PursuitStep{atom, coefficient, residual_norm,
                                search.mults() - before});

    double projected = std::abs(coefficient) * std::sqrt(denom);
    if (projected <= stop_threshold * r0 || residual_norm <= stop_threshold * r0) {
      break;
    }
    if (step + 1 < iterations) problem = problem.with_query(residual);
  }
  return steps;
}

std::map<std::string, double> song_coefficients(
    const std::vector<PursuitStep>& steps, const SongSpec& spec) {
  std::map<std::string, double> coefficients;
  for (const auto& step : steps) {
    coefficients[spec.label(step.atom_index)] += step.coefficient;
  }
  return coefficients;
}

}  // namespace mips
