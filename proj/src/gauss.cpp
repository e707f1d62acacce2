#include "halfspace/gauss.hpp"

#include <gsl/gsl_integration.h>

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace hs {

const GaussRule& gauss_legendre(int q) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<GaussRule>> cache;
    if (q < 1) throw std::domain_error("gauss_legendre: order must be positive");
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(q);
    if (it != cache.end()) return *it->second;
    auto rule = std::make_unique<GaussRule>();
    gsl_integration_glfixed_table* t = gsl_integration_glfixed_table_alloc(static_cast<size_t>(q));
    rule->x.resize(static_cast<std::size_t>(q));
    rule->w.resize(static_cast<std::size_t>(q));
    for (int i = 0; i < q; ++i)
        gsl_integration_glfixed_point(-1.0, 1.0, static_cast<size_t>(i), &rule->x[static_cast<std::size_t>(i)],
                                      &rule->w[static_cast<std::size_t>(i)], t);
    gsl_integration_glfixed_table_free(t);
    const GaussRule& ref = *rule;
    cache.emplace(q, std::move(rule));
    return ref;
}

}  // namespace hs
