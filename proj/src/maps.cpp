#include "interp/maps.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <vector>

#include "interp/parallel.hpp"
#include "interp/report.hpp"
#include "interp/rng.hpp"

namespace interp {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::optional<std::size_t> merge_dim(std::optional<std::size_t> a, std::optional<std::size_t> b)
{
    if (a && b && *a != *b) {
        throw DimensionError("map: embedded vectors have different lengths (" + std::to_string(*a) + " vs " +
                             std::to_string(*b) + ")");
    }
    return a ? a : b;
}

} // namespace

MapExpr::MapExpr(Node node, int degree, std::optional<std::size_t> dim)
    : node_(std::make_shared<const Node>(std::move(node))), degree_(degree), dim_(dim)
{
}

MapExpr MapExpr::var()
{
    return MapExpr(Var{}, 1, std::nullopt);
}

MapExpr MapExpr::constant(CVector value)
{
    if (value.empty()) throw DimensionError("map: const vector must be nonempty");
    const std::size_t n = value.size();
    return MapExpr(Const{std::move(value)}, 0, n);
}

MapExpr MapExpr::scale(Complex factor, MapExpr operand)
{
    const int d = operand.degree();
    const auto n = operand.dim();
    return MapExpr(Scale{factor, std::move(operand)}, d, n);
}

MapExpr MapExpr::sum(MapExpr lhs, MapExpr rhs)
{
    const int d = std::max(lhs.degree(), rhs.degree());
    const auto n = merge_dim(lhs.dim(), rhs.dim());
    return MapExpr(Sum{std::move(lhs), std::move(rhs)}, d, n);
}

MapExpr MapExpr::conv(MapExpr lhs, MapExpr rhs)
{
    const int d = lhs.degree() + rhs.degree();
    const auto n = merge_dim(lhs.dim(), rhs.dim());
    return MapExpr(Conv{std::move(lhs), std::move(rhs)}, d, n);
}

MapExpr MapExpr::diag(CVector weights, MapExpr operand)
{
    if (weights.empty()) throw DimensionError("map: diag vector must be nonempty");
    const int d = operand.degree();
    const auto n = merge_dim(weights.size(), operand.dim());
    return MapExpr(Diag{std::move(weights), std::move(operand)}, d, n);
}

bool operator==(const MapExpr& a, const MapExpr& b)
{
    return a.node_ == b.node_ || *a.node_ == *b.node_;
}

ParseError::ParseError(std::size_t offset, const std::string& message)
    : std::invalid_argument("map parse error at byte " + std::to_string(offset) + ": " + message), offset_(offset)
{
}

// ---------------------------------------------------------------------------
// parser

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : s_(text) {}

    MapExpr parse()
    {
        MapExpr e = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }

    void skip_ws()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    char peek()
    {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    void expect(char c)
    {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    std::string_view identifier()
    {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        return s_.substr(start, pos_ - start);
    }

    double unsigned_decimal()
    {
        if (pos_ >= s_.size() || !(std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) {
            fail("expected a number");
        }
        double v = 0.0;
        const auto res = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
        if (res.ec != std::errc()) fail("malformed number");
        pos_ = static_cast<std::size_t>(res.ptr - s_.data());
        return v;
    }

    double sign()
    {
        const char c = peek();
        if (c == '+' || c == '-') {
            ++pos_;
            skip_ws();
            return c == '-' ? -1.0 : 1.0;
        }
        return 1.0;
    }

    bool imaginary_suffix()
    {
        if (pos_ < s_.size() && s_[pos_] == 'i') {
            ++pos_;
            return true;
        }
        return false;
    }

    // real | imag 'i' | real ('+'|'-') imag 'i'
    Complex number()
    {
        const double s1 = sign();
        const double first = s1 * unsigned_decimal();
        if (imaginary_suffix()) return {0.0, first};
        const char c = peek();
        if (c == '+' || c == '-') {
            const double s2 = sign();
            const double second = s2 * unsigned_decimal();
            if (!imaginary_suffix()) fail("expected 'i' after the imaginary part");
            return {first, second};
        }
        return {first, 0.0};
    }

    CVector number_list()
    {
        expect('[');
        CVector v;
        v.push_back(number());
        while (peek() == ',') {
            ++pos_;
            v.push_back(number());
        }
        expect(']');
        return v;
    }

    MapExpr expr()
    {
        skip_ws();
        const std::size_t start = pos_;
        const std::string_view id = identifier();
        try {
            if (id == "x") return MapExpr::var();
            if (id == "const") return MapExpr::constant(number_list());
            if (id == "scale") {
                expect('(');
                const Complex a = number();
                expect(',');
                MapExpr e = expr();
                expect(')');
                return MapExpr::scale(a, std::move(e));
            }
            if (id == "sum" || id == "conv") {
                expect('(');
                MapExpr a = expr();
                expect(',');
                MapExpr b = expr();
                expect(')');
                return id == "sum" ? MapExpr::sum(std::move(a), std::move(b)) : MapExpr::conv(std::move(a), std::move(b));
            }
            if (id == "diag") {
                CVector d = number_list();
                expect('(');
                MapExpr e = expr();
                expect(')');
                return MapExpr::diag(std::move(d), std::move(e));
            }
        } catch (const DimensionError& e) {
            throw ParseError(start, std::string("dimension mismatch: ") + e.what());
        }
        pos_ = start;
        fail(id.empty() ? "expected an expression" : "unknown operation '" + std::string(id) + "'");
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

void print_number(std::string& out, Complex z)
{
    if (z.imag() == 0.0) {
        out += format_double(z.real());
    } else if (z.real() == 0.0) {
        out += format_double(z.imag()) + "i";
    } else {
        out += format_double(z.real());
        out += z.imag() < 0.0 ? '-' : '+';
        out += format_double(std::abs(z.imag())) + "i";
    }
}

void print_list(std::string& out, const CVector& v)
{
    out += '[';
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        print_number(out, v[i]);
    }
    out += ']';
}

void print_into(std::string& out, const MapExpr& e)
{
    std::visit(overloaded{
                   [&](const MapExpr::Var&) { out += 'x'; },
                   [&](const MapExpr::Const& c) {
                       out += "const";
                       print_list(out, c.value);
                   },
                   [&](const MapExpr::Scale& s) {
                       out += "scale(";
                       print_number(out, s.factor);
                       out += ',';
                       print_into(out, s.operand);
                       out += ')';
                   },
                   [&](const MapExpr::Sum& s) {
                       out += "sum(";
                       print_into(out, s.lhs);
                       out += ',';
                       print_into(out, s.rhs);
                       out += ')';
                   },
                   [&](const MapExpr::Conv& c) {
                       out += "conv(";
                       print_into(out, c.lhs);
                       out += ',';
                       print_into(out, c.rhs);
                       out += ')';
                   },
                   [&](const MapExpr::Diag& d) {
                       out += "diag";
                       print_list(out, d.weights);
                       out += '(';
                       print_into(out, d.operand);
                       out += ')';
                   },
               },
               e.node());
}

double max_abs(const CVector& v)
{
    double m = 0.0;
    for (const auto& z : v) m = std::max(m, std::abs(z));
    return m;
}

void require_map_dim(const MapExpr& expr, std::size_t n, const char* what)
{
    if (expr.dim()) require_same_dim(*expr.dim(), n, what);
}

} // namespace

MapExpr parse_map(std::string_view text)
{
    return Parser(text).parse();
}

std::string print_map(const MapExpr& expr)
{
    std::string out;
    print_into(out, expr);
    return out;
}

MapSpec make_map_spec(std::string source)
{
    MapExpr e = parse_map(source);
    const int d = e.degree();
    return MapSpec{std::move(e), std::move(source), d};
}

// ---------------------------------------------------------------------------
// evaluation

CVector convolve(std::span<const Complex> u, std::span<const Complex> v)
{
    require_same_dim(u.size(), v.size(), "convolve");
    const std::size_t n = u.size();
    CVector w(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (u[i] == Complex{}) continue;
        for (std::size_t j = 0; i + j < n; ++j) w[i + j] += u[i] * v[j];
    }
    return w;
}

CVector eval_map(const MapExpr& expr, std::span<const Complex> x)
{
    require_map_dim(expr, x.size(), "eval_map");
    return std::visit(overloaded{
                          [&](const MapExpr::Var&) { return CVector(x.begin(), x.end()); },
                          [&](const MapExpr::Const& c) { return c.value; },
                          [&](const MapExpr::Scale& s) {
                              CVector v = eval_map(s.operand, x);
                              for (auto& z : v) z *= s.factor;
                              return v;
                          },
                          [&](const MapExpr::Sum& s) {
                              CVector a = eval_map(s.lhs, x);
                              const CVector b = eval_map(s.rhs, x);
                              for (std::size_t k = 0; k < a.size(); ++k) a[k] += b[k];
                              return a;
                          },
                          [&](const MapExpr::Conv& c) { return convolve(eval_map(c.lhs, x), eval_map(c.rhs, x)); },
                          [&](const MapExpr::Diag& d) {
                              CVector v = eval_map(d.operand, x);
                              for (std::size_t k = 0; k < v.size(); ++k) v[k] *= d.weights[k];
                              return v;
                          },
                      },
                      expr.node());
}

// ---------------------------------------------------------------------------
// bounds

double algebra_constant(const SpaceSpec& space)
{
    const auto& m = space.multipliers();
    const std::size_t n = m.size();
    double log_rho = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; i + j < n; ++j) {
            log_rho = std::max(log_rho, std::log(m[i + j]) - std::log(m[i]) - std::log(m[j]));
        }
    }
    double young = 0.0;
    switch (space.exponent()) {
    case Exponent::One: young = 0.0; break;
    case Exponent::Two: young = 0.5; break;
    case Exponent::Infinity: young = 1.0; break;
    }
    const double c = std::exp(log_rho) * std::pow(static_cast<double>(n), young);
    if (!std::isfinite(c) || !(c > 0.0)) throw DomainError("algebra_constant: no finite constant for this space");
    return c;
}

double certified_bound(const MapExpr& expr, const SpaceSpec& in, const SpaceSpec& out, double r)
{
    if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("certified_bound: r must be positive");
    require_map_dim(expr, in.dim(), "certified_bound");
    const double embed = embedding_norm(in, out);
    std::optional<double> conv_constant;
    auto algebra = [&] {
        if (!conv_constant) conv_constant = algebra_constant(out);
        return *conv_constant;
    };
    auto bound = [&](auto&& self, const MapExpr& e) -> double {
        return std::visit(
            overloaded{
                [&](const MapExpr::Var&) { return embed * r; },
                [&](const MapExpr::Const& c) { return norm(out, c.value); },
                [&](const MapExpr::Scale& s) { return std::abs(s.factor) * self(self, s.operand); },
                [&](const MapExpr::Sum& s) { return self(self, s.lhs) + self(self, s.rhs); },
                [&](const MapExpr::Conv& c) { return algebra() * self(self, c.lhs) * self(self, c.rhs); },
                [&](const MapExpr::Diag& d) {
                    if (std::holds_alternative<MapExpr::Var>(d.operand.node())) {
                        // exact operator norm of a diagonal map between diagonal spaces
                        double best = 0.0;
                        for (std::size_t k = 0; k < d.weights.size(); ++k) {
                            best = std::max(best, std::abs(d.weights[k]) * out.multipliers()[k] / in.multipliers()[k]);
                        }
                        return best * r;
                    }
                    return max_abs(d.weights) * self(self, d.operand);
                },
            },
            e.node());
    };
    return bound(bound, expr);
}

double certified_bound(const MapExpr& expr, const SpaceSpec& space, double r)
{
    return certified_bound(expr, space, space, r);
}

std::optional<int> homogeneous_degree(const MapExpr& expr)
{
    return std::visit(overloaded{
                          [](const MapExpr::Var&) -> std::optional<int> { return 1; },
                          [](const MapExpr::Const&) -> std::optional<int> { return 0; },
                          [](const MapExpr::Scale& s) { return homogeneous_degree(s.operand); },
                          [](const MapExpr::Diag& d) { return homogeneous_degree(d.operand); },
                          [](const MapExpr::Sum& s) -> std::optional<int> {
                              const auto a = homogeneous_degree(s.lhs);
                              const auto b = homogeneous_degree(s.rhs);
                              if (a && b && *a == *b) return a;
                              return std::nullopt;
                          },
                          [](const MapExpr::Conv& c) -> std::optional<int> {
                              const auto a = homogeneous_degree(c.lhs);
                              const auto b = homogeneous_degree(c.rhs);
                              if (a && b) return *a + *b;
                              return std::nullopt;
                          },
                      },
                      expr.node());
}

double homogeneous_constant(const MapExpr& expr, const SpaceSpec& in, const SpaceSpec& out)
{
    if (!homogeneous_degree(expr)) throw DomainError("homogeneous_constant: map is not homogeneous");
    // For a degree-n homogeneous map, sup over the unit ball is the best M in ||Phi(x)|| <= M ||x||^n.
    return certified_bound(expr, in, out, 1.0);
}

std::optional<CVector> diagonal_of(const MapExpr& expr, std::size_t n)
{
    return std::visit(overloaded{
                          [&](const MapExpr::Var&) -> std::optional<CVector> { return CVector(n, Complex{1.0, 0.0}); },
                          [&](const MapExpr::Const&) -> std::optional<CVector> { return std::nullopt; },
                          [&](const MapExpr::Conv&) -> std::optional<CVector> { return std::nullopt; },
                          [&](const MapExpr::Scale& s) -> std::optional<CVector> {
                              auto d = diagonal_of(s.operand, n);
                              if (d) for (auto& z : *d) z *= s.factor;
                              return d;
                          },
                          [&](const MapExpr::Diag& g) -> std::optional<CVector> {
                              require_same_dim(n, g.weights.size(), "diagonal_of");
                              auto d = diagonal_of(g.operand, n);
                              if (d) for (std::size_t k = 0; k < n; ++k) (*d)[k] *= g.weights[k];
                              return d;
                          },
                          [&](const MapExpr::Sum& s) -> std::optional<CVector> {
                              auto a = diagonal_of(s.lhs, n);
                              const auto b = diagonal_of(s.rhs, n);
                              if (!a || !b) return std::nullopt;
                              for (std::size_t k = 0; k < n; ++k) (*a)[k] += (*b)[k];
                              return a;
                          },
                      },
                      expr.node());
}

double sample_sup(const MapExpr& expr, const SpaceSpec& in, const SpaceSpec& out, double r, std::size_t n_samples,
                  std::uint64_t seed, unsigned threads)
{
    if (n_samples < 1) throw DomainError("sample_sup: n_samples must be at least 1");
    if (!(r > 0.0)) throw DomainError("sample_sup: r must be positive");
    require_map_dim(expr, in.dim(), "sample_sup");
    const std::size_t n = in.dim();
    const double radius = r * (1.0 - 1e-9);
    std::vector<double> values(n + n_samples);
    parallel_for(values.size(), threads, [&](std::size_t i) {
        CVector x(n);
        if (i < n) {
            x[i] = radius / in.multipliers()[i];
        } else {
            RandomStream rng(seed, 0x5a, i - n);
            x = complex_gaussian(rng, n);
            const double scale = radius / norm(in, x);
            for (auto& z : x) z *= scale;
        }
        values[i] = norm(out, eval_map(expr, x));
    });
    return *std::max_element(values.begin(), values.end());
}

double sample_sup(const MapExpr& expr, const SpaceSpec& space, double r, std::size_t n_samples, std::uint64_t seed,
                  unsigned threads)
{
    return sample_sup(expr, space, space, r, n_samples, seed, threads);
}

} // namespace interp
