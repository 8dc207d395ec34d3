#ifndef FAIRDIV_MMS_HPP
#define FAIRDIV_MMS_HPP

#include <optional>
#include <vector>

#include "fairdiv/rational.hpp"

namespace fairdiv {

// Which share guarantee an agent is owed. With n agents and the agent's
// values rescaled so that their maximin share over the variant's pile count
// equals 1, the guarantee is `threshold()` of that unit:
//   - kTwoNMinusTwo: 2n-2 piles, threshold 1;
//   - kLOut (parameter l >= 2): l*n-2 piles, threshold l-1;
//   - kTwoThirds: n piles, threshold 2/3.
struct MmsVariant {
  enum class Kind { kTwoNMinusTwo, kLOut, kTwoThirds };
  Kind kind = Kind::kTwoNMinusTwo;
  int l = 2;  // only meaningful for kLOut

  static MmsVariant two_n_minus_two() { return {Kind::kTwoNMinusTwo, 2}; }
  static MmsVariant l_out(int l) { return {Kind::kLOut, l}; }
  static MmsVariant two_thirds() { return {Kind::kTwoThirds, 2}; }

  int pile_count(int agent_count) const;
  Rational threshold() const;  // in the normalized scale

  friend bool operator==(const MmsVariant&, const MmsVariant&) = default;
};

// Additive valuations: values[i][o] is agent i's non-negative rational value
// for object o.
struct MmsInstance {
  std::vector<std::vector<Rational>> values;

  int agent_count() const { return static_cast<int>(values.size()); }
  int object_count() const { return values.empty() ? 0 : static_cast<int>(values[0].size()); }
};

// Exact maximin share: the largest value such that the objects can be split
// into d piles whose l least-valuable piles together are worth that much
// (piles may be empty). Found by branch-and-bound over canonical set
// partitions; limited to 12 objects.
struct MmsResult {
  Rational value;
  std::vector<std::vector<int>> witness;  // d piles of object indices, maximizing
};

MmsResult mms_value(const std::vector<Rational>& values, int l, int d);

// Regrouping of partially-consumed piles. Pile j originally had value
// v[j] >= 1, of which s[j] was removed; the result groups pile indices so
// that every group's remaining value (sum of v[j]-s[j]) reaches the kind's
// threshold. Piles that do not fit any group are left out.
//   - kUnit: requires sum(s) <= k; threshold 1; at least ceil((n-k)/2) groups.
//   - kLMinusOne: requires sum(s) <= (l-1)k; threshold l-1; at least
//     floor((n-(l-1)k+1)/l) groups.
//   - kTwoThirds: requires sum(s) <= 2k/3; threshold 2/3; at least n-k
//     groups (singletons with little removed, pairs of half-consumed piles).
enum class RegroupKind { kUnit, kLMinusOne, kTwoThirds };

struct RegroupParams {
  int k = 0;  // removal budget multiplier (agents served so far)
  int l = 2;  // only for kLMinusOne
};

std::vector<std::vector<int>> regroup_piles(const std::vector<Rational>& v,
                                            const std::vector<Rational>& s, RegroupKind kind,
                                            const RegroupParams& params);

// One agent's view of the protocol: their reference partition into the
// variant's pile count, their normalized object values (reference partition's
// least pile = 1), and which objects have already been handed out.
struct PileState {
  int agent_count = 0;  // n at protocol start
  MmsVariant variant;
  std::vector<Rational> values;            // normalized, one per object
  std::vector<std::vector<int>> piles;     // reference partition of all objects
  std::vector<bool> removed;               // per object
};

// Bundles the remaining objects into exactly `parts` disjoint sets, each
// worth at least `threshold` to the owner of `state`, by regrouping their
// reference piles; leftover piles and groups are swept into the last bundle.
// Covers every remaining object. Throws internal_error if the regrouping
// comes up short (the protocol's invariants rule that out).
std::vector<std::vector<int>> divider_partition(const PileState& state, int parts,
                                                const Rational& threshold);

struct ObjectAllocation {
  std::vector<std::vector<int>> bundles;  // one per agent; together a partition
};

struct MmsAllocateResult {
  ObjectAllocation allocation;
  // Per agent: the exact maximin share at the variant's pile count, or the
  // least pile value of the supplied reference partition. The guarantee met
  // by the allocation is threshold() * share_bases[i] in original units.
  std::vector<Rational> share_bases;
};

// Allocates every object. Each agent i receives a bundle worth at least
// their variant's threshold times share_bases[i]. Agents whose share base is
// zero receive an empty bundle up front (an empty bundle meets a zero
// guarantee); if every agent's base is zero, all objects go to agent 0.
// Reference partitions are computed exactly unless supplied (one partition
// per agent, into that agent's pile count; piles may be empty).
MmsAllocateResult allocate(
    const MmsInstance& instance, const std::vector<MmsVariant>& per_agent_variants,
    const std::optional<std::vector<std::vector<std::vector<int>>>>& reference_partitions =
        std::nullopt);
MmsAllocateResult allocate(const MmsInstance& instance, const MmsVariant& variant);

}  // namespace fairdiv

#endif  // FAIRDIV_MMS_HPP
