#include <doctest.h>

#include "properties.hpp"

// Small runs of the randomized suites; the acceptance binary runs the full count.
TEST_CASE("property suites") {
    for (const auto& r : properties::all(20261016, 60)) {
        MESSAGE(r.str());
        CHECK(r.ok());
    }
}
