#pragma once

#include <memory>
#include <string>

#include "dgns/diagnostics.hpp"
#include "dgns/field.hpp"

namespace dgns {

/// Self-describing text container for a solution field: embedded native
/// mesh + tag table, polynomial degree, time stamp and modal coefficients.
/// Used for reference solutions and restarts.
struct StoredField {
    std::shared_ptr<Mesh> mesh;
    std::shared_ptr<BasisSet> basis;
    std::shared_ptr<SolutionField> field;
    double time = 0;
};

void save_field(const SolutionField& field, double time, const std::string& path);
StoredField load_field(const std::string& path);

/// Error of `field` against a stored (typically finer/higher-order)
/// reference, evaluated with the same norms protocol as error_norms.
ErrorNorms reference_field_error(const SolutionField& field, const StoredField& reference);

}  // namespace dgns
