#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "interp/spaces.hpp"

namespace interp {

/// Polynomial map built from sequence-space operations. Immutable; subtrees
/// are shared between copies.
///
///   expr := 'x'
///         | 'const' '[' numbers ']'
///         | 'scale' '(' number ',' expr ')'
///         | 'sum'   '(' expr ',' expr ')'
///         | 'conv'  '(' expr ',' expr ')'
///         | 'diag'  '[' numbers ']' '(' expr ')'
class MapExpr {
public:
    struct Var {
        friend bool operator==(const Var&, const Var&) = default;
    };
    struct Const;
    struct Scale;
    struct Sum;
    struct Conv;
    struct Diag;
    using Node = std::variant<Var, Const, Scale, Sum, Conv, Diag>;

    static MapExpr var();
    static MapExpr constant(CVector value);
    static MapExpr scale(Complex factor, MapExpr operand);
    static MapExpr sum(MapExpr lhs, MapExpr rhs);
    static MapExpr conv(MapExpr lhs, MapExpr rhs);
    static MapExpr diag(CVector weights, MapExpr operand);

    const Node& node() const;

    /// Polynomial degree: Var 1, Const 0, Scale/Diag preserve, Sum max, Conv add.
    int degree() const { return degree_; }
    /// Length of the embedded vectors, if any.
    std::optional<std::size_t> dim() const { return dim_; }

    friend bool operator==(const MapExpr& a, const MapExpr& b);

private:
    MapExpr(Node node, int degree, std::optional<std::size_t> dim);

    std::shared_ptr<const Node> node_;
    int degree_ = 1;
    std::optional<std::size_t> dim_;
};

struct MapExpr::Const {
    CVector value;
    friend bool operator==(const Const&, const Const&) = default;
};
struct MapExpr::Scale {
    Complex factor;
    MapExpr operand;
    friend bool operator==(const Scale&, const Scale&) = default;
};
struct MapExpr::Sum {
    MapExpr lhs;
    MapExpr rhs;
    friend bool operator==(const Sum&, const Sum&) = default;
};
struct MapExpr::Conv {
    MapExpr lhs;
    MapExpr rhs;
    friend bool operator==(const Conv&, const Conv&) = default;
};
struct MapExpr::Diag {
    CVector weights;
    MapExpr operand;
    friend bool operator==(const Diag&, const Diag&) = default;
};

inline const MapExpr::Node& MapExpr::node() const
{
    return *node_;
}

/// Syntax or dimension error in map source text, located by byte offset.
class ParseError : public std::invalid_argument {
public:
    ParseError(std::size_t offset, const std::string& message);
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

MapExpr parse_map(std::string_view text);

/// Canonical text: no whitespace, shortest round-trip numbers.
std::string print_map(const MapExpr& expr);

struct MapSpec {
    MapExpr expr;
    std::string source;
    int degree = 0;
};

MapSpec make_map_spec(std::string source);

/// Truncated convolution (u*v)_k = sum_{i+j=k} u_i v_j, k < N.
CVector convolve(std::span<const Complex> u, std::span<const Complex> v);

CVector eval_map(const MapExpr& expr, std::span<const Complex> x);

/// Constant C with ||u*v|| <= C ||u|| ||v|| for the truncated convolution:
///   C = max_{i+j<N} m_{i+j} / (m_i m_j) * N^(1 - 1/p),
/// with m the norm multipliers. For p = 1 this is the best constant (attained
/// at basis pairs); it equals 1 for submultiplicative weights with w_0 = 1.
double algebra_constant(const SpaceSpec& space);

/// Upper bound on sup { ||Phi(x)||_out : ||x||_in <= r } derived from the AST.
double certified_bound(const MapExpr& expr, const SpaceSpec& in, const SpaceSpec& out, double r);
double certified_bound(const MapExpr& expr, const SpaceSpec& space, double r);

/// Degree n if every monomial of the AST has degree n.
std::optional<int> homogeneous_degree(const MapExpr& expr);

/// Certified M with ||Phi(x)||_out <= M ||x||_in^n for a homogeneous map of degree n.
double homogeneous_constant(const MapExpr& expr, const SpaceSpec& in, const SpaceSpec& out);

/// d with Phi(x) = d (.) x, when the map is a diagonal linear operator
/// (built from x, scale, diag and sum only).
std::optional<CVector> diagonal_of(const MapExpr& expr, std::size_t n);

/// Monte Carlo lower estimate of sup ||Phi(x)||_out over the sphere
/// ||x||_in = r (1 - 1e-9): all scaled basis vectors plus n_samples normalized
/// complex Gaussian directions. Sample i uses its own stream (seed, i).
double sample_sup(const MapExpr& expr, const SpaceSpec& in, const SpaceSpec& out, double r, std::size_t n_samples,
                  std::uint64_t seed, unsigned threads = 1);
double sample_sup(const MapExpr& expr, const SpaceSpec& space, double r, std::size_t n_samples, std::uint64_t seed,
                  unsigned threads = 1);

} // namespace interp
