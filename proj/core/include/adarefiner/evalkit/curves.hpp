#pragma once

#include <filesystem>

namespace adarefiner::evalkit {

// Derives plot-ready CSVs from a completed run directory:
//   learning_curve.csv      step,mean_return       (trailing 100 episodes)
//   comprehension_curve.csv step,mean_l            (trailing 100 episodes)
//   success_rates.csv       achievement,rate,log10_rate
//   policy_probs.csv        step,p_<action>...
// Throws std::runtime_error naming any missing input file.
void emit_curves(const std::filesystem::path& run_dir,
                 const std::filesystem::path& out_dir);

}  // namespace adarefiner::evalkit
