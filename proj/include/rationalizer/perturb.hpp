#ifndef RATIONALIZER_PERTURB_HPP
#define RATIONALIZER_PERTURB_HPP

#include <optional>

#include "rationalizer/solvers.hpp"

namespace rationalizer {

// Benchmark forms and models -------------------------------------------------

// Three-legged centipede: P1 (D1/A1), then P2 (d/a), then P1 (D2/A2).
ExtensiveForm centipede_form();

// sign > 0: the 2+1/n family; sign < 0: 2-1/n; sign = 0: the limit payoffs.
StandardPayoffStructure centipede_structure_of(int n, int sign);

// n >= 1: P2 commonly knows the plus structure, P1 holds the minus structure
// while ascribing the plus one to P2. n <= 0: the limit standard model.
ModelProfile centipede_models(int n);

struct TwoStateExample {
  ExtensiveForm form;
  StandardPayoffStructure structure;
  TypeStructurePtr types;  // p1_th1, p1_th2, q_cb1, q_cb2, q_mix
  // Builds the model profile for the chosen root types.
  ModelProfile model(const std::string& t1_root, const std::string& t2_root) const;
};
// Two payoff states; the first player knows the state, the second never does.
TwoStateExample two_state_example();

// Structure perturbations ----------------------------------------------------

// Adds, per (player, strategy, payoff type), one payoff type granting that
// player a 1/n bonus at exactly the terminals the strategy can reach. The
// original types are retained unchanged; added types are payoff-equivalent to
// their seeds for everyone else.
StandardPayoffStructure tie_break(const ExtensiveForm& form, const StandardPayoffStructure& base,
                                  int n);

// Same construction with the bonus scaled beyond the payoff spread, so each
// added type makes its strategy conditionally dominant. The result is rich.
StandardPayoffStructure dominance_extension(const ExtensiveForm& form,
                                            const StandardPayoffStructure& base, int n);

// One payoff type per (player, strategy): indicator payoffs for the owner and
// zero for everyone else. Rich, with the identity witness pairing.
StandardPayoffStructure default_rich_structure(const ExtensiveForm& form);

// Hierarchy keeping the base structure for the first k orders and bottoming
// out at common knowledge of the rich structure. k = 0 yields that common
// knowledge outright.
StructurePtr richness_graft(PlayerId owner, const StandardPayoffStructure& base,
                            const StandardPayoffStructure& rich, int k);

// Model perturbations --------------------------------------------------------

// Replaces each hierarchy of a standard model by its richness graft; types and
// roots are reused unchanged (the rich structure must retain the base types).
ModelProfile graft_models(const ExtensiveForm& form, const ModelProfile& base,
                          const StandardPayoffStructure& rich, int k);

// Common knowledge of tie_break(base, n) with the original types and roots.
ModelProfile tie_break_models(const ExtensiveForm& form, const ModelProfile& base, int n);

// Standard models over dominance_extension(base, n), one type per added
// dominance state, each certain of a fixed opponent profile.
ModelProfile rich_standard_models(const ExtensiveForm& form, const StandardPayoffStructure& base,
                                  int n);

// Unique selection -----------------------------------------------------------

struct SelectionStep {
  int index = 0;  // the perturbation parameter n
  ModelProfile models;
  Rat distance{0};  // model distance to the base profile
};

// For a standard model and a target rationalizable outcome, composes the
// graft with the dominance-scaled tie-break extension and seeds the types
// with transported witness conjectures, so that the perturbed models select
// the target outcome uniquely. Verified by solver runs; returns nullopt when
// the construction fails to collapse the outcome set.
std::optional<std::vector<SelectionStep>> unique_selection_sequence(
    const ExtensiveForm& form, const ModelProfile& base, NodeId target,
    const std::vector<int>& indices, const SolverOptions& opts = {});

}  // namespace rationalizer

#endif  // RATIONALIZER_PERTURB_HPP
