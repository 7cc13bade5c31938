#include "detail.hpp"
#include "rotavg/error.hpp"
#include "rotavg/local.hpp"

namespace rotavg {

SolveReport rcdl_solve(const MeasurementMatrix& M, const RotationStack& R0,
                       const SolveConfig& cfg, const LocalMethod& local) {
  validate(cfg);
  detail::check_solver_input(M, R0);
  if (!local) throw Error(ErrorCode::kInvalidArgument, "no local method given");
  const detail::Stopwatch clock;
  const int n = M.size();

  SolveReport report;
  report.solver = "rcdl";
  std::vector<Mat3> R = R0;
  report.initial_objective = objective(R, M);
  double previous = report.initial_objective;
  int delay = 0;

  for (int epoch = 0; epoch < cfg.max_epochs; ++epoch) {
    if (n >= 2) {
      for (int k : epoch_order(n, cfg.k_order, cfg.seed, epoch)) {
        rcd_update(R, M, k, /*flip=*/false, report.block_mults);
        ++report.iterations;
      }
    }
    int flips = 0;
    if (delay == 0 || epoch % delay == 0) {
      flips = detail::flip_determinants(R);
      LocalAttempt attempt;
      attempt.epoch = epoch;
      attempt.delay = delay;
      attempt.objective_before = objective(R, M);
      RotationStack refined = local(R, M);
      attempt.objective_after = objective(refined, M);
      attempt.accepted = attempt.objective_after < attempt.objective_before;
      if (attempt.accepted) {
        R = std::move(refined);
      } else {
        delay += 2;
      }
      report.local_attempts.push_back(attempt);
    }
    const double f = objective(R, M);
    report.objective_trace.push_back(f);
    report.flips_per_epoch.push_back(flips);
    report.epoch_seconds.push_back(clock.seconds());
    report.epochs = epoch + 1;
    if (n < 2 || detail::converged(previous, f, cfg.tolerance)) {
      report.termination = Termination::kConverged;
      break;
    }
    previous = f;
  }
  // Epochs without a local attempt leave pre-flip blocks behind.
  const int final_flips = detail::flip_determinants(R);
  if (final_flips > 0) {
    report.flips_per_epoch.back() += final_flips;
    report.objective_trace.back() = objective(R, M);
  }
  report.rotations = std::move(R);
  report.seconds = clock.seconds();
  return report;
}

SolveReport rcdl_solve(const MeasurementMatrix& M, const RotationStack& R0,
                       const SolveConfig& cfg, const LocalConfig& lcfg) {
  validate(lcfg);
  return rcdl_solve(M, R0, cfg,
                    [lcfg](const RotationStack& R, const MeasurementMatrix& A) {
                      return local_refine(R, A, lcfg);
                    });
}

}  // namespace rotavg
