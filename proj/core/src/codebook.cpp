#include "leobeam/codebook.hpp"

#include <algorithm>
#include <cmath>

namespace leobeam {

namespace {

double cosine(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    double na = a.norm(), nb = b.norm();
    if (na == 0.0 || nb == 0.0)
        return 0.0;
    return a.dot(b) / (na * nb);
}

/// Enumerates size-s index subsets of {0..m-1} in lexicographic order,
/// invoking fn on each; fn returns false to stop.
template <typename Fn>
void for_each_support(int m, int s, Fn&& fn) {
    std::vector<int> idx(s);
    for (int i = 0; i < s; ++i)
        idx[i] = i;
    for (;;) {
        if (!fn(idx))
            return;
        int i = s - 1;
        while (i >= 0 && idx[i] == m - s + i)
            --i;
        if (i < 0)
            return;
        ++idx[i];
        for (int j = i + 1; j < s; ++j)
            idx[j] = idx[j - 1] + 1;
    }
}

} // namespace

const Eigen::VectorXd& ActionCodebook::decode(int index) const {
    if (index < 0 || index >= size())
        throw InputError("codebook decode: action index out of range");
    return actions[static_cast<std::size_t>(index)];
}

ActionCodebook build_codebook(const CodebookConfig& cfg) {
    if (cfg.k < 1 || cfg.k > cfg.m)
        throw ConfigError("build_codebook: need 1 <= k <= m");
    if (cfg.levels.empty())
        throw ConfigError("build_codebook: empty level set");
    for (double l : cfg.levels)
        if (!(l > 0.0 && l <= 1.0))
            throw ConfigError("build_codebook: levels must lie in (0, 1]");
    if (cfg.cap < cfg.m)
        throw ConfigError("build_codebook: cap must be >= m");

    const double dominant = *std::max_element(cfg.levels.begin(), cfg.levels.end());
    // Secondary level: the configured level closest to half the dominant.
    double rest = cfg.levels.front();
    for (double l : cfg.levels)
        if (std::abs(l - dominant / 2.0) < std::abs(rest - dominant / 2.0))
            rest = l;

    ActionCodebook book;
    book.built_from = cfg;

    auto try_keep = [&](const Eigen::VectorXd& candidate) {
        for (const Eigen::VectorXd& kept : book.actions)
            if (cosine(candidate, kept) >= cfg.prune_threshold)
                return;
        book.actions.push_back(candidate);
    };

    for (int s = 1; s <= cfg.k && book.size() < cfg.cap; ++s) {
        for_each_support(cfg.m, s, [&](const std::vector<int>& support) {
            // uniform pattern
            Eigen::VectorXd w = Eigen::VectorXd::Zero(cfg.m);
            for (int i : support)
                w(i) = 1.0 / s;
            try_keep(w);
            if (book.size() >= cfg.cap)
                return false;
            // dominant rotations
            for (int r = 0; r < s; ++r) {
                Eigen::VectorXd v = Eigen::VectorXd::Zero(cfg.m);
                double sum = dominant + rest * (s - 1);
                for (int j = 0; j < s; ++j)
                    v(support[j]) = (j == r ? dominant : rest) / sum;
                try_keep(v);
                if (book.size() >= cfg.cap)
                    return false;
            }
            return true;
        });
    }
    return book;
}

} // namespace leobeam
