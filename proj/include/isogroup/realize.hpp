#ifndef ISOGROUP_REALIZE_HPP
#define ISOGROUP_REALIZE_HPP

/**
 * @file realize.hpp
 * @brief Building a finite metric space whose isometry group is a given
 *        finite group, and verifying the result.
 *
 * The construction embeds the group G as left translations of a metric
 * on its own elements, covers the unwanted isometries of that base
 * space with finitely many approximate-agreement neighborhoods, hangs a
 * pair of distinguishing extension functions off each neighborhood, and
 * adjoins the G-orbits of those functions (plus either an apex point or
 * a ladder of tag points) so that exactly the translations survive as
 * isometries of the enlarged space.
 */

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "isogroup/group.hpp"
#include "isogroup/iso_search.hpp"
#include "isogroup/katetov.hpp"

namespace isogroup {

enum class MetricKind { discrete, word, explicit_matrix };

struct MetricChoice {
  MetricKind kind = MetricKind::discrete;
  std::vector<int> word_generators;  // element indices, for MetricKind::word
  std::vector<std::string> labels;   // for explicit_matrix
  std::vector<std::vector<Rational>> matrix;
};

struct LeftTranslationSpace {
  SpacePtr space;                // one point per group element, diameter <= 1
  std::vector<Isometry> embed;   // embed[g]: x -> g * x
};

/// Builds the base space on the group's elements (discrete, word-length,
/// or explicit left-invariant matrix; anything of diameter > 1 is
/// rescaled) together with the left-translation embedding.
LeftTranslationSpace left_translation_space(const Group& group,
                                            const MetricChoice& metric);

/// An approximate-agreement neighborhood: the set of isometries psi of
/// the base with d(psi(x_k), y_k) < epsilon for every witness x_k.
/// Invariants: targets are the witness images under a single isometry,
/// 2 m epsilon < the minimum pairwise witness distance (epsilon is
/// minpair / (2m + 1)), and no embedded group element lies inside.
struct Neighborhood {
  std::vector<int> witnesses;
  std::vector<int> targets;
  Rational epsilon;
  int index = 0;  // 1-based position in the cover
};

enum class CoverStrategy { greedy, pairs };
enum class OffsetSchedule { harmonic, dyadic };
enum class Pipeline { compact, polish };

bool v_membership(const Isometry& psi, const Neighborhood& nb);

/// Covers every isometry of the base outside the embedded group.
/// greedy walks the excess isometries in lexicographic order and grows
/// a minimal witness tuple from the identity element's point; pairs
/// enumerates witnesses (e, a) with targets (u, v), v != u*a.  Both
/// results are checked for soundness (no group element inside any
/// neighborhood) and completeness against iso_x.
std::vector<Neighborhood> build_cover(const LeftTranslationSpace& base,
                                      const Group& group,
                                      const IsoGroup& iso_x,
                                      CoverStrategy strategy);

/// Re-checks an existing cover: every neighborhood satisfies the
/// Neighborhood invariants and every isometry outside the embedded
/// group lands in one of them.  Raises errc::cover_unsound otherwise.
void check_cover(const LeftTranslationSpace& base, const Group& group,
                 const IsoGroup& iso_x, const std::vector<Neighborhood>& cover);

/// The distinguishing pair for one neighborhood: the staircase over its
/// witnesses and the staircase over its targets, both at the given
/// level offset.
std::pair<KatetovMap, KatetovMap> build_pair_functions(const SpacePtr& base,
                                                       const Neighborhood& nb,
                                                       const Rational& offset);

struct Lemma1Result {
  bool passed = true;
  std::vector<int> witness_psi;  // image vector of the first failure
  bool in_neighborhood = false;  // side values at the failure
  Rational function_gap;
};

/// Exhaustively checks, for every psi in Iso(X), that psi lies in the
/// neighborhood exactly when sup_distance(psi_* f, g) < epsilon.
Lemma1Result lemma1_check(const SpacePtr& base, const IsoGroup& iso_x,
                          const Neighborhood& nb, const KatetovMap& f,
                          const KatetovMap& g);

enum class PointKind { base, orbit, tag, apex };

struct PointProvenance {
  PointKind kind = PointKind::base;
  int group_element = -1;  // base and orbit points
  int neighborhood = -1;   // orbit and tag points (orbit 0 = extra layer)
};

struct Assembly {
  SpacePtr K;
  SpacePtr X;
  Pipeline pipeline = Pipeline::compact;
  std::vector<PointProvenance> provenance;  // one per point of K
  PointSet x_set;                           // base copy inside K
  std::vector<Neighborhood> cover;          // final (post-gate) neighborhoods
  std::vector<Rational> offsets;            // per neighborhood level offset
  OffsetSchedule schedule = OffsetSchedule::harmonic;
  // orbit_point[i][g] = index in K of the pushforward of f_{i+1} by g.
  std::vector<std::vector<int>> orbit_point;
  std::vector<PointSet> f_sets;  // orbit point sets per neighborhood
  int apex = -1;                 // compact pipeline
  std::vector<int> tag_points;   // polish pipeline, tag i at tag_points[i]
  // extra_point[j] = K index of the optional offset-zero layer map j;
  // extra_translate[j][g] = layer slot of its pushforward by g.
  std::vector<int> extra_point;
  std::vector<std::vector<int>> extra_translate;
  bool lemma1_passed = false;
};

/// Adjoins the G-orbits of the distinguishing functions at pairwise
/// distinct positive level offsets, then one apex point at distance
/// diam(Z) + 1 + d(z, X) from every z.  Runs the Lemma-1 gate (with
/// epsilon-halving retries) before assembling.
Assembly assemble_compact(const LeftTranslationSpace& base, const Group& group,
                          const IsoGroup& iso_x,
                          std::vector<Neighborhood> cover,
                          OffsetSchedule schedule, bool include_extra_layer);

/// Adjoins the orbits at offset zero and one tag point per neighborhood
/// (plus tag 0 for the base itself) with d(y_i, z) = (i + 2) + d(z, F_i).
Assembly assemble_polish(const LeftTranslationSpace& base, const Group& group,
                         const IsoGroup& iso_x,
                         std::vector<Neighborhood> cover);

/// Extends a translation of the base to the assembled space: base points
/// move by the translation, orbit points by the pushforward action, tag
/// and apex points stay fixed.  The result is checked to be an isometry.
Isometry extend_isometry(const Isometry& phi, const Assembly& assembly,
                         const Group& group,
                         const LeftTranslationSpace& base);

struct RealizationReport {
  long long group_order = 0;
  Pipeline pipeline = Pipeline::compact;
  OffsetSchedule schedule = OffsetSchedule::harmonic;
  int cover_size = 0;
  long long iso_order_of_k = 0;
  bool embedding_verified = false;
  bool lemma1_verified = false;
  bool recovery_verified = false;
  bool realized = false;
  std::vector<PointProvenance> provenance;
  std::vector<Neighborhood> cover;
  std::string detail;  // first failed check, empty when everything holds
};

/// Re-enumerates Iso(K), verifies the embedding g -> extension is an
/// injective homomorphism onto it, and checks the recovery identities
/// (apex or tags fixed, base and orbit levels recoverable from
/// distances).  realized = embedding verified and |Iso(K)| = |G|.
RealizationReport verify_realization(const Assembly& assembly,
                                     const Group& group,
                                     const LeftTranslationSpace& base,
                                     long long node_budget);

struct PipelineResult {
  Assembly assembly;
  LeftTranslationSpace base;
  RealizationReport report;
};

/// Full pipeline with the degenerate special cases: |G| = 1 yields the
/// one-point space for either pipeline; |G| = 2 yields the two-point
/// space for the compact pipeline (the polish pipeline handles it
/// generically with a single tag).
PipelineResult realize_pipeline(const Group& group, const MetricChoice& metric,
                                Pipeline pipeline, CoverStrategy strategy,
                                OffsetSchedule schedule,
                                bool include_extra_layer,
                                long long node_budget);

}  // namespace isogroup

#endif
