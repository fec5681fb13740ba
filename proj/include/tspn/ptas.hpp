#pragma once

#include "tspn/instance.hpp"

#include <functional>

namespace tspn {

// Called once per solved LP with the extracted tour and its feasibility
// report. Calls are serialized.
using CandidateHook = std::function<void(const Tour&, const FeasibilityReport&)>;

// Enumerates (configuration, order, guess) triples, solves one LP per triple
// and returns the feasible candidate of least true length. Configurations are
// seeded from the min-box and the local-search tour (their para(H) hulls) and
// then sampled; see RunConfig for the caps. Throws NoCandidateFound, or
// InternalAssertion if an LP optimum fails the feasibility recheck.
ResultRecord run_ptas(const Instance& inst, const RunConfig& cfg, const CandidateHook& hook = {});

// Shift vector of the smallest para(H) member containing the points:
// rho_s = min_p <p, n_s>.
std::vector<double> para_hull_shifts(const BaseSet& base, const std::vector<Vec>& pts);

}  // namespace tspn
