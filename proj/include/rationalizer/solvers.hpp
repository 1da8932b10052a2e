#ifndef RATIONALIZER_SOLVERS_HPP
#define RATIONALIZER_SOLVERS_HPP

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "rationalizer/kernel.hpp"

namespace rationalizer {

enum class SolutionConcept { kEfr, kBackward, kStrictEfr, kIcr };

std::string concept_name(SolutionConcept c);

struct SolverOptions {
  int max_rounds = 0;  // <= 0: stabilization bound derived from the inputs
  int threads = 1;
};

// One (hierarchy view, owner type) pair in the ascription closure of a model.
struct ViewTypeKey {
  int model = 0;  // root model the view was reached from
  std::string structure_key;
  PlayerId player = -1;
  int type_index = -1;
  auto operator<=>(const ViewTypeKey&) const = default;
};

using RoundSets = std::map<ViewTypeKey, std::vector<StrategyIdx>>;

struct SolutionTrace {
  SolutionConcept kind = SolutionConcept::kEfr;
  bool budget_exceeded = false;
  int fixpoint_round = 0;              // first round index whose sets repeat
  std::vector<RoundSets> rounds;       // rounds[0] holds the full sets
  std::vector<ViewTypeKey> roots;      // per player: the root view and type
  // Witness conjectures from the final evaluated round, per view and strategy.
  std::map<ViewTypeKey, std::map<StrategyIdx, Cps>> witnesses;

  const RoundSets& final_sets() const { return rounds.back(); }
  const std::vector<StrategyIdx>& set_at(int round, const ViewTypeKey& key) const;
  const std::vector<StrategyIdx>& root_set(PlayerId i) const;
};

// Iterated solve of the chosen concept over the profile of subjective models.
// Each player's rounds quantify over the views and types their own hierarchy
// ascribes, exactly as the correspondences prescribe.
SolutionTrace solve(const ExtensiveForm& form, const ModelProfile& models, SolutionConcept c,
                    const SolverOptions& opts = {});

inline SolutionTrace efr(const ExtensiveForm& f, const ModelProfile& m, const SolverOptions& o = {}) {
  return solve(f, m, SolutionConcept::kEfr, o);
}
inline SolutionTrace backward(const ExtensiveForm& f, const ModelProfile& m,
                              const SolverOptions& o = {}) {
  return solve(f, m, SolutionConcept::kBackward, o);
}
inline SolutionTrace strict_efr(const ExtensiveForm& f, const ModelProfile& m,
                                const SolverOptions& o = {}) {
  return solve(f, m, SolutionConcept::kStrictEfr, o);
}
inline SolutionTrace icr(const ExtensiveForm& f, const ModelProfile& m,
                         const SolverOptions& o = {}) {
  return solve(f, m, SolutionConcept::kIcr, o);
}

// Terminals reachable by some profile drawn from the root types' final sets.
std::vector<NodeId> trace_outcomes(const ExtensiveForm& form, const SolutionTrace& trace);

// Histories in the observer's conditioning family reachable when every
// opponent plays within the given per-(player, type) correspondence.
using CorrespondenceFn = std::function<const std::vector<StrategyIdx>&(PlayerId, int)>;
std::vector<NodeId> reachable_under(const ExtensiveForm& form, const SubjectiveModel& observer,
                                    const CorrespondenceFn& corr);

// The correspondence of the observer's ascribed views at a given round.
std::vector<NodeId> reachable_under_trace(const ExtensiveForm& form, const ModelProfile& models,
                                          PlayerId observer, const SolutionTrace& trace, int round);

// Diagnostics over traces --------------------------------------------------

// Strategies agreeing with s at every own history reachable under the
// observer's ascribed round-k correspondence.
std::vector<StrategyIdx> equivalent_on_reachable(const ExtensiveForm& form,
                                                 const ModelProfile& models, PlayerId i,
                                                 const SolutionTrace& trace, int round,
                                                 StrategyIdx s);

// Types of player i whose recorded witness for s spreads initial mass over
// every history the previous round's ascribed correspondence reaches.
std::vector<int> full_support_types(const ExtensiveForm& form, const ModelProfile& models,
                                    PlayerId i, const SolutionTrace& trace, StrategyIdx s);

}  // namespace rationalizer

#endif  // RATIONALIZER_SOLVERS_HPP
