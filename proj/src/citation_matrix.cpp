#include "biblio/citation_matrix.hpp"

#include <algorithm>
#include <cmath>

namespace biblio {

CitationMatrix CitationMatrix::build(const Database& d) {
    CitationMatrix m;
    const std::size_t n = d.paper_count();
    m.col_weight_.resize(n);
    m.col_off_.resize(n + 1, 0);
    m.col_rows_.reserve(d.edge_count());
    for (PaperIdx q = 0; q < n; ++q) {
        const auto refs = d.references_of(q);
        m.col_weight_[q] = refs.empty() ? 0.0 : 1.0 / static_cast<double>(refs.size());
        m.col_rows_.insert(m.col_rows_.end(), refs.begin(), refs.end());
        m.col_off_[q + 1] = m.col_rows_.size();
    }
    return m;
}

std::span<const PaperIdx> CitationMatrix::column_rows(PaperIdx q) const {
    return {col_rows_.data() + col_off_[q], col_off_[q + 1] - col_off_[q]};
}

void CitationMatrix::apply(std::span<const double> x, std::span<double> y) const {
    std::fill(y.begin(), y.end(), 0.0);
    for (PaperIdx q = 0; q < dim(); ++q) {
        const double contrib = col_weight_[q] * x[q];
        if (contrib == 0.0)
            continue;
        for (std::size_t i = col_off_[q]; i < col_off_[q + 1]; ++i)
            y[col_rows_[i]] += contrib;
    }
}

void CitationMatrix::apply_transpose(std::span<const double> x,
                                     std::span<double> y) const {
    for (PaperIdx q = 0; q < dim(); ++q) {
        double acc = 0.0;
        for (std::size_t i = col_off_[q]; i < col_off_[q + 1]; ++i)
            acc += x[col_rows_[i]];
        y[q] = col_weight_[q] * acc;
    }
}

void InfluenceParams::validate() const {
    if (!(delta >= 0.0) || delta >= 1.0)
        throw DomainError("delta must lie in [0, 1)");
    if (!(tolerance > 0.0))
        throw DomainError("tolerance must be positive");
    if (max_order && *max_order < 1)
        throw DomainError("max_order must be at least 1");
}

int InfluenceParams::truncation_order() const {
    validate();
    int order = 1;
    if (delta > 0.0 && tolerance < 1.0) {
        const double k = std::ceil(std::log(tolerance) / std::log(delta));
        order = k > 1e9 ? 1000000000 : std::max(1, static_cast<int>(k));
    }
    if (max_order)
        order = std::min(order, *max_order);
    return order;
}

CitationMatrix direct_influence_matrix(const Database& d) {
    return CitationMatrix::build(d);
}

double influence_order_k(const CitationMatrix& m, int k, PaperIdx p, PaperIdx q) {
    if (k < 1)
        throw DomainError("influence order must be at least 1");
    std::vector<double> v(m.dim(), 0.0);
    for (PaperIdx r : m.column_rows(q))
        v[r] = m.column_weight(q);
    std::vector<double> next(m.dim());
    for (int step = 1; step < k; ++step) {
        m.apply(v, next);
        std::swap(v, next);
    }
    return v[p];
}

namespace {

// Shared series loop. Column sums of M are at most one, so for any
// nonnegative seed the L1 mass of the forward iterates never grows;
// for the transpose the same holds for the sup norm. Either way the
// tail after step k is bounded by delta^k times the current mass, which
// justifies the early stop.
std::vector<double> discounted_series(const CitationMatrix& m,
                                      const InfluenceParams& params,
                                      std::span<const double> seed,
                                      bool transpose) {
    params.validate();
    const int order = params.truncation_order();
    const double delta = params.delta;

    std::vector<double> v(seed.begin(), seed.end());
    std::vector<double> next(m.dim());
    std::vector<double> acc(m.dim(), 0.0);

    double coeff = 1.0; // delta^(k-1)
    for (int k = 1; k <= order; ++k) {
        if (transpose)
            m.apply_transpose(v, next);
        else
            m.apply(v, next);
        std::swap(v, next);

        double mass = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            acc[i] += coeff * v[i];
            mass += std::abs(v[i]);
        }
        if (mass * coeff * delta <= params.tolerance)
            break;
        coeff *= delta;
    }
    const double outer = 1.0 - delta;
    for (double& x : acc)
        x *= outer;
    return acc;
}

} // namespace

std::vector<double> discounted_influence(const CitationMatrix& m,
                                         const InfluenceParams& params,
                                         std::span<const double> seed) {
    return discounted_series(m, params, seed, false);
}

std::vector<double> discounted_influence_transpose(const CitationMatrix& m,
                                                   const InfluenceParams& params,
                                                   std::span<const double> seed) {
    return discounted_series(m, params, seed, true);
}

double pi_delta_pair(const CitationMatrix& m, const InfluenceParams& params,
                     PaperIdx p, PaperIdx q) {
    std::vector<double> seed(m.dim(), 0.0);
    seed[q] = 1.0;
    return discounted_influence(m, params, seed)[p];
}

double pi_delta_pair(const Database& d, const InfluenceParams& params,
                     const std::string& p, const std::string& q) {
    const CitationMatrix m = CitationMatrix::build(d);
    return pi_delta_pair(m, params, d.paper_at(p), d.paper_at(q));
}

std::vector<double> exerted_totals_vec(const CitationMatrix& m,
                                       const InfluenceParams& params) {
    std::vector<double> ones(m.dim(), 1.0);
    return discounted_influence_transpose(m, params, ones);
}

std::map<std::string, double> exerted_totals(const Database& d,
                                             const InfluenceParams& params) {
    const CitationMatrix m = CitationMatrix::build(d);
    const std::vector<double> sigma = exerted_totals_vec(m, params);
    std::map<std::string, double> out;
    for (PaperIdx q = 0; q < d.paper_count(); ++q)
        out[d.paper_id(q)] = sigma[q];
    return out;
}

DenseMatrix dense_oracle_pi(const Database& d, double delta, int order) {
    const std::size_t n = d.paper_count();
    if (n > 2000)
        throw SizeGuardError("dense oracle limited to 2000 papers, got " +
                             std::to_string(n));
    if (!(delta >= 0.0) || delta >= 1.0)
        throw DomainError("delta must lie in [0, 1)");
    if (order < 1)
        throw DomainError("order must be at least 1");

    DenseMatrix m(n);
    for (PaperIdx q = 0; q < n; ++q) {
        const auto refs = d.references_of(q);
        if (refs.empty())
            continue;
        const double w = 1.0 / static_cast<double>(refs.size());
        for (PaperIdx p : refs)
            m.at(p, q) = w;
    }

    DenseMatrix power = m; // M^k
    DenseMatrix acc = m;   // sum of delta^(k-1) M^k
    double coeff = 1.0;
    for (int k = 2; k <= order; ++k) {
        coeff *= delta;
        if (coeff == 0.0)
            break;
        DenseMatrix next(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t l = 0; l < n; ++l) {
                const double mil = m.at(i, l);
                if (mil == 0.0)
                    continue;
                for (std::size_t j = 0; j < n; ++j)
                    next.at(i, j) += mil * power.at(l, j);
            }
        power = std::move(next);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                acc.at(i, j) += coeff * power.at(i, j);
    }
    const double outer = 1.0 - delta;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            acc.at(i, j) *= outer;
    return acc;
}

} // namespace biblio
