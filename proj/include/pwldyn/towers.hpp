#pragma once

#include "pwldyn/construct.hpp"

#include <array>
#include <set>
#include <string>
#include <vector>

namespace pwldyn {

/// One compartment of layer 2 or 3: an auxiliary point, the d-point sequence
/// feeding the next layer, and three monotonic periodic-point sequences whose
/// convex hulls must be pairwise disjoint (after the stated exclusions).
struct Compartment {
    Family family = Family::plain;
    int layer = 2;
    int n = 0;
    int k = 0;  // layer-3 only
    Rational window_lo, window_hi;
    LabeledPoint nu;
    std::vector<LabeledPoint> d_points;
    std::array<std::vector<LabeledPoint>, 3> sequences;
    std::array<std::string, 3> sequence_names;
    /// Indices (sequence, position) excluded from the hull-disjointness rule.
    std::vector<std::pair<int, int>> hull_exclusions;
    std::vector<std::string> violations;
    bool hulls_disjoint = true;
    bool pass = false;
};

/// The auxiliary point of a compartment: a root of f^K(x) = v in the stated
/// search window that satisfies the compartment's sandwich; the extremal root
/// is preferred and the scan position is recorded.
LabeledPoint aux_nu(const ConstructionContext& ctx, Family fam, int n, int layer3_k = -1);

Compartment layer2_compartment(const ConstructionContext& ctx, Family fam, int n, int count);
Compartment layer3_compartment(const ConstructionContext& ctx, Family fam, int n, int k,
                               int count);

enum class Lemma { L4, L4bar, L8, L12 };

/// Interval nonexistence checks: enumerates every least period up to the
/// lemma's bound inside the lemma's interval and compares against the allowed
/// and required sets.
struct NonexistenceReport {
    std::string lemma;
    Rational window_lo, window_hi;
    int bound = 0;
    std::set<int> allowed;
    std::set<int> required;
    std::set<int> found;
    bool pass = false;
};

NonexistenceReport verify_nonexistence(const ConstructionContext& ctx, Lemma lemma,
                                       const std::vector<int>& indices);

struct TowerRow {
    std::string label;
    Rational value;
    std::optional<int> claimed;
    std::optional<int> actual;
    bool guaranteed = false;
    bool pass = true;
};

struct Tower {
    Layer1 first;
    std::vector<Compartment> compartments;
    std::vector<TowerRow> verification;
    std::vector<std::string> violations;
    bool pass = false;
};

/// Layer 1 plus every family's layer-2 compartments for n up to n_max
/// (tilde starts at n = 0) and layer-3 compartments for k up to k_max,
/// `count` points per sequence; labels unique, section containment checked.
Tower assemble_tower(const ConstructionContext& ctx, int n_max, int k_max, int count);

}  // namespace pwldyn
