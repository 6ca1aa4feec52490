// Outcome of an exact identity check.
#pragma once

#include <string>

namespace qg {

struct RelationCheck {
    std::string relation;
    bool pass = true;
    std::string witness;  // first failing entry
};

}  // namespace qg
