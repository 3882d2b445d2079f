#pragma once

// Seeded generators for graphs, queries and traversals, and the randomized
// engine-versus-oracle loop built on them.

#include <cstdint>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "s2g/gremlin/traversal.hpp"
#include "s2g/model.hpp"

namespace s2g::fuzz {

/// mt19937_64 with hand-rolled range reduction, so a seed produces the same
/// stream with every standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    /// Uniform in [0, n); n must be positive.
    std::uint64_t below(std::uint64_t n);
    /// Uniform in [lo, hi].
    std::int64_t between(std::int64_t lo, std::int64_t hi);
    bool percent(unsigned p) { return below(100) < p; }

    template <class T>
    const T& pick(const std::vector<T>& items) {
        return items[below(items.size())];
    }

private:
    std::mt19937_64 engine_;
};

/// Seed of iteration `index` in a run keyed by `seed` (splitmix64 mixing).
std::uint64_t iteration_seed(std::uint64_t seed, std::uint64_t index);

/// 1..max_vertices vertices labelled person/item/place, up to twice as many
/// knows/likes/owns edges, and properties name, age, score, val (mixed
/// types) and flag, each present with some probability.
PropertyGraph random_graph(Rng& rng, std::size_t max_vertices);

enum class FeatureClass { C, F, L, G, Gc, O, U, Op, M, S };

const std::vector<FeatureClass>& all_classes();
std::string class_name(FeatureClass c);

/// A valid, translatable query of the given class. Constants are drawn from
/// `graph` where possible so that results are often non-empty.
std::string random_query(Rng& rng, FeatureClass cls, const PropertyGraph& graph);

/// A well-formed traversal over every step kind, with nesting up to depth 2
/// and literals chosen to stress quoting and number formatting.
gremlin::Traversal random_traversal(Rng& rng);

struct FuzzOptions {
    std::uint64_t seed = 0;
    std::size_t count = 100;
    std::size_t max_vertices = 30;
};

struct FuzzSummary {
    std::size_t cases = 0;
    std::size_t agreed = 0;
    std::size_t non_empty = 0;
    bool mismatch = false;
    bool generator_error = false;
};

/// Runs `count` graph/query pairs and writes a deterministic report. Stops
/// at the first disagreement and prints the seed, query and graph needed to
/// reproduce it.
FuzzSummary run_fuzz(const FuzzOptions& options, std::ostream& report);

}  // namespace s2g::fuzz
