#ifndef FRAC_CORE_HPP
#define FRAC_CORE_HPP

#include <cstddef>
#include <functional>
#include <memory>
#include <stdexcept>
#include <vector>

// Core domain types for the generalized fractional calculus on (a, T]:
// the order/type/scale triple, the scaled-time change of variables
// z = (t^rho - a^rho)/rho, graded meshes in z, and grid functions that
// can be stored either plainly or premultiplied by a power of z.
//
// Everything here is immutable after construction and safe to share
// across threads.

namespace frac {

/// Order alpha in (0,1), type beta in [0,1], scale rho > 0 and the
/// derived exponent gamma = alpha + beta*(1-alpha).
struct FracParams {
    double alpha;
    double beta;
    double rho;
    double gamma;

    FracParams(double alpha_, double beta_, double rho_);

    /// (1-beta)*(1-alpha), equal to 1-gamma.
    double one_minus_gamma() const { return (1.0 - beta) * (1.0 - alpha); }
};

/// z = (t^rho - a^rho)/rho. Zero iff t == a, strictly increasing in t.
double scaled_time(double t, double a, double rho);

/// Inverse of scaled_time: t = (rho*z + a^rho)^(1/rho).
double inverse_scaled_time(double z, double a, double rho);

/// Default mesh grading for kernels with z^(gamma-1) endpoint behavior.
double default_grading(double gamma);

/// Graded mesh on [a, T] with z_j = Z*(j/(N-1))^r, Z = (T^rho - a^rho)/rho.
/// z is the primary coordinate; t nodes are derived views and may tie at
/// neighboring indices when the grading puts z below the resolution of
/// double near t = a.
class ScaledGrid {
  public:
    static std::shared_ptr<const ScaledGrid> make_graded(double a, double T,
                                                         std::size_t n,
                                                         double rho,
                                                         double grading);

    double a() const { return a_; }
    double T() const { return T_; }
    double rho() const { return rho_; }
    double grading() const { return grading_; }
    std::size_t size() const { return z_.size(); }

    /// Z = z_{N-1}, the scaled length of the interval.
    double scaled_length() const { return z_.back(); }

    double t(std::size_t j) const { return t_[j]; }
    double z(std::size_t j) const { return z_[j]; }
    const std::vector<double>& t_nodes() const { return t_; }
    const std::vector<double>& z_nodes() const { return z_; }

  private:
    ScaledGrid() = default;
    double a_ = 0, T_ = 0, rho_ = 1, grading_ = 1;
    std::vector<double> t_, z_;
};

using GridPtr = std::shared_ptr<const ScaledGrid>;

enum class Representation { plain, weighted };

/// Sampled function on a ScaledGrid. In weighted form with exponent w the
/// stored value at node j is z_j^w * f(t_j); slot 0 then holds the limit
/// of z^w f(t) as z -> 0+ rather than a product with z = 0.
class GridFunction {
  public:
    GridFunction(GridPtr grid, std::vector<double> values,
                 Representation rep = Representation::plain,
                 double weight = 0.0);

    /// Sample f(t, z) plainly on every node.
    static GridFunction sample(GridPtr grid,
                               const std::function<double(double, double)>& f);

    /// Build a weighted function directly from its continuous part:
    /// stored_j = v(t_j, z_j) including the j = 0 limit slot.
    static GridFunction sample_weighted(
        GridPtr grid, double weight,
        const std::function<double(double, double)>& v);

    static GridFunction zeros(GridPtr grid);

    const GridPtr& grid() const { return grid_; }
    std::size_t size() const { return values_.size(); }
    Representation representation() const { return rep_; }
    bool is_plain() const { return rep_ == Representation::plain; }
    double weight() const { return weight_; }

    double operator[](std::size_t j) const { return values_[j]; }
    const std::vector<double>& values() const { return values_; }

    /// Plain value of the underlying function at node j (divides out the
    /// weight; infinite at z = 0 when the weighted limit is nonzero).
    double plain_value(std::size_t j) const;

    friend bool same_grid(const GridFunction& f, const GridFunction& g) {
        return f.grid_ == g.grid_;
    }

  private:
    GridPtr grid_;
    std::vector<double> values_;
    Representation rep_;
    double weight_;
};

/// Multiply a plain function by z^w. The z = 0 slot is filled with
/// `limit` when given, otherwise by quadratic extrapolation from the
/// three smallest positive nodes.
GridFunction to_weighted(const GridFunction& g, double w);
GridFunction to_weighted(const GridFunction& g, double w, double limit);

/// Divide out the weight again. At z = 0 the plain value is the limit of
/// z^-w times the stored limit (infinite for w > 0 and nonzero limit).
GridFunction from_weighted(const GridFunction& g);

/// The Cauchy-type problem: D^{alpha,beta} x = f(t, x) on (a, T] with
/// weighted initial datum b != 0 at t = a.
struct CauchyProblem {
    FracParams params;
    double a;
    double b;
    std::function<double(double, double)> rhs;  // (t, x) -> f(t, x)

    CauchyProblem(FracParams params_, double a_, double b_,
                  std::function<double(double, double)> rhs_);
};

}  // namespace frac

#endif
