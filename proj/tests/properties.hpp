#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "support.hpp"

// Randomized property suites shared by the unit tests (few cases) and the
// acceptance binary (the full count).
namespace properties {

struct Result {
    std::string name;
    int cases = 0;
    long checks = 0;  // individual comparisons made
    int failures = 0;
    std::string first;  // description of the first failure
    double seconds = 0;

    bool ok() const { return failures == 0 && cases > 0; }
    std::string str() const;
};

Result associativity(std::uint64_t seed, int cases);
Result edge_boundary(std::uint64_t seed, int cases);
Result plug_congruence(std::uint64_t seed, int cases);
Result refinement_decomposition(std::uint64_t seed, int cases);
Result language_preservation(std::uint64_t seed, int cases);
Result qpctl_embedding(std::uint64_t seed, int cases);

std::vector<Result> all(std::uint64_t seed, int cases);

// Small random HRG over S/0 and A/2 with colors red, blue, init.
hrmc::Grammar random_grammar(fixtures::Rng& rng);
// Random qualitative PCTL state formula over red and blue.
std::string random_qpctl(fixtures::Rng& rng, int depth);

}  // namespace properties
