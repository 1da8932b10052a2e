#ifndef RATIONALIZER_HIERARCHY_HPP
#define RATIONALIZER_HIERARCHY_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rationalizer/payoffs.hpp"

namespace rationalizer {

class SubjectiveStructure;
using StructurePtr = std::shared_ptr<const SubjectiveStructure>;

// A node in a player's subjective payoff hierarchy: the structure the owner
// deems right (level1) plus, per opponent, the hierarchy ascribed to them.
// Depth-1 nodes carry no ascriptions and stand for common knowledge of level1
// from that order on. Nodes are interned by content, so structural equality is
// pointer equality on key().
class SubjectiveStructure {
 public:
  static StructurePtr common_knowledge(PlayerId owner, StandardPayoffStructure level1);
  static StructurePtr make(PlayerId owner, StandardPayoffStructure level1,
                           std::map<PlayerId, StructurePtr> ascriptions);

  PlayerId owner() const { return owner_; }
  const StandardPayoffStructure& level1() const { return *level1_; }
  bool is_ck_tail() const { return ascriptions_.empty(); }
  int depth() const { return depth_; }
  // The hierarchy the owner ascribes to opponent j. For a CK node this is
  // common knowledge of the same structure, owned by j.
  StructurePtr ascription(PlayerId j) const;
  const std::string& key() const { return key_; }

 private:
  SubjectiveStructure() = default;
  PlayerId owner_ = -1;
  std::shared_ptr<const StandardPayoffStructure> level1_;
  std::map<PlayerId, StructurePtr> ascriptions_;
  int depth_ = 1;
  std::string key_;
};

// Finitely supported belief of a type: over (nature state, opponents' types).
struct TypeBeliefAtom {
  std::string nature;
  std::vector<std::string> opponent_types;  // one label per opponent, ascending player order
  Rat prob;
};

struct TypeDef {
  std::string label;
  std::string payoff_type;
  std::vector<TypeBeliefAtom> belief;
};

// Finite Harsanyi-style type structure shared by all players of a profile.
class TypeStructure {
 public:
  TypeStructure() = default;
  explicit TypeStructure(int num_players) : types_(num_players) {}

  int num_players() const { return static_cast<int>(types_.size()); }
  void add_type(PlayerId i, TypeDef def);
  const std::vector<TypeDef>& types(PlayerId i) const { return types_[i]; }
  const TypeDef& type(PlayerId i, int idx) const { return types_[i][idx]; }
  int num_types(PlayerId i) const { return static_cast<int>(types_[i].size()); }
  int type_index(PlayerId i, const std::string& label) const;  // -1 when missing
  int require_type(PlayerId i, const std::string& label) const;  // throws

  // Probabilities sum to one, labels resolve, no negative mass.
  ValidationReport validate() const;

 private:
  std::vector<std::vector<TypeDef>> types_;
};

using TypeStructurePtr = std::shared_ptr<const TypeStructure>;

// A subjective model: hierarchy plus consistent root type for the owner.
struct SubjectiveModel {
  StructurePtr structure;
  TypeStructurePtr types;
  std::string root_type;
};

using ModelProfile = std::vector<SubjectiveModel>;  // one per player, ascending

// Coherence across consecutive hierarchy levels: whatever the node's level1
// says about opponent j's own payoff slices must be present, slice for slice,
// in what the node ascribes to j about herself. Slices are compared on j's own
// utilities.
ValidationReport validate_hierarchy(const ExtensiveForm& form, const StructurePtr& node,
                                    bool unawareness_lint = false);

// Consistency of a type with a hierarchy: payoff type drawn from level1,
// belief support inside level1's states, and supported opponent types
// recursively consistent with the ascribed hierarchies.
bool type_consistency(const StructurePtr& node, const TypeStructure& ts,
                      const std::string& type_label);
std::vector<int> consistent_types(const StructurePtr& node, const TypeStructure& ts);

// Smallest k such that k-th order richness holds, up to the hierarchy depth.
std::optional<int> higher_order_richness(const ExtensiveForm& form, const StructurePtr& node);

// Exact pseudometric on model profiles: per order k, structure distance (via
// canonical-representation Hausdorff distance on the ascribed level-1
// structures) plus total variation between order-k belief marginals, weighted
// 2^-k, maximized over players. Depth mismatches expand through the CK tails.
Rat model_distance(const ModelProfile& a, const ModelProfile& b);

}  // namespace rationalizer

#endif  // RATIONALIZER_HIERARCHY_HPP
