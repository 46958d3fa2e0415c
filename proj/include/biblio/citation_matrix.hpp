#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "biblio/database.hpp"

namespace biblio {

/// Column-sparse direct-influence operator over papers: column q holds
/// the value 1/R_q at every row p in q's reference list, and is empty
/// when q has no references. Every nonempty column sums to 1, so the
/// matrix is column-substochastic and so are all of its powers.
class CitationMatrix {
public:
    static CitationMatrix build(const Database& d);

    std::size_t dim() const { return col_weight_.size(); }
    double column_weight(PaperIdx q) const { return col_weight_[q]; }
    std::span<const PaperIdx> column_rows(PaperIdx q) const;

    /// y := M x, the influence pull: y[p] = sum_q M[p][q] x[q].
    void apply(std::span<const double> x, std::span<double> y) const;
    /// y := M^T x: y[q] = (1/R_q) * sum over q's references of x.
    void apply_transpose(std::span<const double> x, std::span<double> y) const;

private:
    std::vector<double> col_weight_;  // 1/R_q, 0 for empty columns
    std::vector<std::size_t> col_off_;
    std::vector<PaperIdx> col_rows_;
};

/// Discount and truncation control for the influence series
/// (1-delta) * sum_{k>=1} delta^(k-1) M^k.
struct InfluenceParams {
    double delta = 0.5;       // in [0, 1)
    double tolerance = 1e-10; // absolute, on accumulated column-mass tails
    std::optional<int> max_order;

    /// Effective truncation order K: the smallest K with delta^K <=
    /// tolerance (so the omitted tail of any column is below tolerance),
    /// capped by max_order; K = 1 when delta = 0.
    int truncation_order() const;
    void validate() const; // throws DomainError
};

CitationMatrix direct_influence_matrix(const Database& d);

/// (M^k)[p][q], computed by k sparse pulls starting from column q.
double influence_order_k(const CitationMatrix& m, int k, PaperIdx p, PaperIdx q);

/// The discounted series applied to a seed vector:
/// (1-delta) * sum_{k=1..K} delta^(k-1) M^k seed, with an early stop
/// once an iterate's remaining mass certifies a tail below tolerance.
std::vector<double> discounted_influence(const CitationMatrix& m,
                                         const InfluenceParams& params,
                                         std::span<const double> seed);
/// Same series for M^T; used for totals of exerted influence.
std::vector<double> discounted_influence_transpose(const CitationMatrix& m,
                                                   const InfluenceParams& params,
                                                   std::span<const double> seed);

double pi_delta_pair(const CitationMatrix& m, const InfluenceParams& params,
                     PaperIdx p, PaperIdx q);
double pi_delta_pair(const Database& d, const InfluenceParams& params,
                     const std::string& p, const std::string& q);

/// sigma(q) = total influence exerted on q by all papers; always in
/// [0, 1], with equality to 1 exactly when every paper reachable from q
/// along references has a reference itself.
std::vector<double> exerted_totals_vec(const CitationMatrix& m,
                                       const InfluenceParams& params);
std::map<std::string, double> exerted_totals(const Database& d,
                                             const InfluenceParams& params);

/// Dense reference computation of the truncated series, kept
/// independent of the sparse path; guarded to 2000 papers.
class DenseMatrix {
public:
    DenseMatrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}
    std::size_t dim() const { return n_; }
    double& at(std::size_t row, std::size_t col) { return a_[row * n_ + col]; }
    double at(std::size_t row, std::size_t col) const { return a_[row * n_ + col]; }

private:
    std::size_t n_;
    std::vector<double> a_;
};

DenseMatrix dense_oracle_pi(const Database& d, double delta, int order);

} // namespace biblio
