// fixtures.hpp
// ------------
// Built-in regression fixtures: the six worked examples of the source
// systems, shipped exactly as printed, plus corrected siblings for the two
// whose printed constants violate their own case relations. Erratum fixtures
// carry expected=fail so the suite stays green while recording the defect.

#pragma once

#include <vector>

#include "fermat/parser.hpp"

namespace fermat {

struct Fixture {
    std::string name;
    std::string note;  // erratum annotation, empty otherwise
    ManifestDocument doc;
};

const std::vector<Fixture>& builtin_fixtures();
const Fixture& fixture_by_name(std::string_view name);

}  // namespace fermat
