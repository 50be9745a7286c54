#pragma once

#include <vector>

#include <Eigen/Dense>

#include "leobeam/errors.hpp"

namespace leobeam {

struct CodebookConfig {
    int m = 10;                                        ///< beam count
    int k = 3;                                         ///< max support size
    std::vector<double> levels = {0.25, 0.5, 0.75, 1.0};
    double prune_threshold = 0.90;                     ///< cosine screening
    int cap = 128;
};

/// Finite set of normalized beam-weight vectors, indexed by DQN outputs.
/// Construction: supports of size 1..k enumerated size-major, lexicographic
/// within each size; per support, a uniform pattern plus each rotation of one
/// dominant level with the rest at the mid level; l1-normalized; greedily
/// kept while the cosine similarity to every kept action stays below the
/// prune threshold; truncated at cap.
struct ActionCodebook {
    std::vector<Eigen::VectorXd> actions;
    CodebookConfig built_from;

    int size() const { return static_cast<int>(actions.size()); }
    const Eigen::VectorXd& decode(int index) const;
};

ActionCodebook build_codebook(const CodebookConfig& cfg);

} // namespace leobeam
