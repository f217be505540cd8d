#include "rbd/contraction.hpp"

#include "rbd/topology.hpp"

#include <unordered_set>

namespace rbd {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows) : n_(rows.size())
{
    data_.reserve(n_ * n_);
    for (const auto& row : rows) {
        if (row.size() != n_)
            throw ContractionError("matrix rows must all have length " + std::to_string(n_));
        data_.insert(data_.end(), row.begin(), row.end());
    }
}

bool IntMatrix::is_symmetric() const
{
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i + 1; j < n_; ++j)
            if ((*this)(i, j) != (*this)(j, i))
                return false;
    return true;
}

IntMatrix chain_matrix(std::span<const DivisorClass> classes)
{
    IntMatrix m(classes.size());
    for (std::size_t i = 0; i < classes.size(); ++i)
        for (std::size_t j = 0; j < classes.size(); ++j)
            m(i, j) = pair(classes[i], classes[j]);
    return m;
}

IntMatrix plumbing_matrix(const Chain& c)
{
    IntMatrix m(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        m(i, i) = -c[i];
        if (i + 1 < c.size())
            m(i, i + 1) = m(i + 1, i) = 1;
    }
    return m;
}

namespace {

// One Bareiss step on rows below k: a[i][j] = (a[k][k] a[i][j] - a[i][k] a[k][j]) / prev.
// The division is exact; the product is formed in 128 bits.
void bareiss_eliminate(std::vector<std::vector<std::int64_t>>& a, std::size_t k, std::int64_t prev)
{
    const std::size_t rows = a.size();
    const std::size_t cols = a.front().size();
    for (std::size_t i = k + 1; i < rows; ++i) {
        for (std::size_t j = k + 1; j < cols; ++j) {
            __int128 v = static_cast<__int128>(a[k][k]) * a[i][j] - static_cast<__int128>(a[i][k]) * a[k][j];
            a[i][j] = checked::narrow(v / prev);
        }
        a[i][k] = 0;
    }
}

std::vector<std::vector<std::int64_t>> rows_of(const IntMatrix& m)
{
    std::vector<std::vector<std::int64_t>> a(m.size(), std::vector<std::int64_t>(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j)
            a[i][j] = m(i, j);
    return a;
}

} // namespace

std::vector<std::int64_t> leading_minors(const IntMatrix& m)
{
    // Without pivoting the k-th Bareiss pivot is the k-th leading minor.
    // Once one vanishes the later pivots are no longer minors, so fall back
    // to computing each remaining minor on its own submatrix.
    std::vector<std::int64_t> minors;
    if (m.size() == 0)
        return minors;
    auto a = rows_of(m);
    std::int64_t prev = 1;
    for (std::size_t k = 0; k < a.size(); ++k) {
        minors.push_back(a[k][k]);
        if (a[k][k] == 0) {
            for (std::size_t r = k + 1; r < a.size(); ++r) {
                IntMatrix sub(r + 1);
                for (std::size_t i = 0; i <= r; ++i)
                    for (std::size_t j = 0; j <= r; ++j)
                        sub(i, j) = m(i, j);
                // Determinant of sub via pivoted Bareiss.
                auto b = rows_of(sub);
                std::int64_t p = 1;
                int sign = 1;
                std::int64_t det = 0;
                bool singular = false;
                for (std::size_t c = 0; c < b.size(); ++c) {
                    std::size_t piv = c;
                    while (piv < b.size() && b[piv][c] == 0)
                        ++piv;
                    if (piv == b.size()) {
                        singular = true;
                        break;
                    }
                    if (piv != c) {
                        std::swap(b[piv], b[c]);
                        sign = -sign;
                    }
                    bareiss_eliminate(b, c, p);
                    p = b[c][c];
                }
                if (!singular)
                    det = sign * b.back().back();
                minors.push_back(det);
            }
            break;
        }
        bareiss_eliminate(a, k, prev);
        prev = a[k][k];
    }
    return minors;
}

bool is_negative_definite(const IntMatrix& m)
{
    if (!m.is_symmetric())
        throw ContractionError("is_negative_definite needs a symmetric matrix");
    if (m.size() == 0)
        return false;
    auto minors = leading_minors(m);
    for (std::size_t k = 0; k < minors.size(); ++k) {
        bool odd = (k % 2) == 0; // D_1 is minors[0]
        if (odd ? minors[k] >= 0 : minors[k] <= 0)
            return false;
    }
    return true;
}

std::vector<Rational> discrepancies(const IntMatrix& m, std::span<const std::int64_t> kdotg)
{
    const std::size_t n = m.size();
    if (kdotg.size() != n)
        throw ContractionError("discrepancies: right-hand side has the wrong length");
    if (n == 0)
        return {};
    // M is symmetric for our inputs, but solve the system exactly as written:
    // row j reads sum_i d_i M[i][j] = -kdotg[j].
    std::vector<std::vector<std::int64_t>> a(n, std::vector<std::int64_t>(n + 1));
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i)
            a[j][i] = m(i, j);
        a[j][n] = checked::neg(kdotg[j]);
    }
    std::int64_t prev = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        while (piv < n && a[piv][k] == 0)
            ++piv;
        if (piv == n)
            throw ContractionError("discrepancies: intersection matrix is singular");
        if (piv != k)
            std::swap(a[piv], a[k]);
        bareiss_eliminate(a, k, prev);
        prev = a[k][k];
    }
    std::vector<Rational> d(n);
    for (std::size_t k = n; k-- > 0;) {
        Rational acc(a[k][n]);
        for (std::size_t j = k + 1; j < n; ++j)
            acc -= Rational(a[k][j]) * d[j];
        d[k] = acc / Rational(a[k][k]);
    }
    return d;
}

std::vector<Rational> discrepancies(std::span<const DivisorClass> classes, const DivisorClass& k)
{
    std::vector<std::int64_t> kdotg;
    kdotg.reserve(classes.size());
    for (const auto& g : classes)
        kdotg.push_back(pair(k, g));
    return discrepancies(chain_matrix(classes), kdotg);
}

namespace {

std::vector<DivisorClass> classes_of(const SurfaceState& s, const std::vector<std::string>& names)
{
    std::vector<DivisorClass> out;
    out.reserve(names.size());
    for (const auto& n : names)
        out.push_back(s.curve(n));
    return out;
}

void require_disjoint(const SurfaceState& s, std::span<const std::string> chain_names)
{
    for (std::size_t a = 0; a < chain_names.size(); ++a)
        for (std::size_t b = a + 1; b < chain_names.size(); ++b)
            for (const auto& x : s.chain_curves(chain_names[a]))
                for (const auto& y : s.chain_curves(chain_names[b]))
                    if (auto v = pair(s.curve(x), s.curve(y)); v != 0)
                        throw ContractionError("chains " + chain_names[a] + " and " + chain_names[b] +
                                               " are not disjoint: " + x + " . " + y + " = " + std::to_string(v));
}

} // namespace

ChainContraction contract_chain(const SurfaceState& s, const std::string& chain_name)
{
    const auto& curves = s.chain_curves(chain_name);
    ChainContraction out{chain_name, curves, s.chain_check(chain_name), std::nullopt, {}, false, false, 0, {}};
    auto classes = classes_of(s, out.curves);
    out.negative_definite = is_negative_definite(chain_matrix(classes));
    if (!out.negative_definite)
        throw ContractionError("chain " + chain_name + " is not negative definite");
    out.cpq = recognize_cpq(out.chain);
    out.class_t = is_class_T(out.chain);
    if (out.class_t)
        out.t_params = t_params(out.chain);
    out.lens_order = lens_order(out.chain);
    out.discrepancies = discrepancies(classes, s.canonical());
    return out;
}

RationalClass pullback_canonical(const SurfaceState& s, std::span<const std::string> chain_names)
{
    require_disjoint(s, chain_names);
    RationalClass total(s.canonical());
    for (const auto& name : chain_names) {
        auto c = contract_chain(s, name);
        for (std::size_t i = 0; i < c.curves.size(); ++i)
            total += c.discrepancies[i] * RationalClass(s.curve(c.curves[i]));
    }
    return total;
}

ContractionReport nef_report(const SurfaceState& s, std::span<const std::string> chain_names,
                             const RationalClass& pullback)
{
    ContractionReport report;
    report.pullback = pullback;
    report.ksq_singular = ksq_singular(pullback);
    std::unordered_set<std::string> contracted;
    bool discrepancies_ok = true;
    for (const auto& name : chain_names) {
        auto c = contract_chain(s, name);
        contracted.insert(c.curves.begin(), c.curves.end());
        for (const auto& d : c.discrepancies)
            discrepancies_ok = discrepancies_ok && d > Rational(0) && d < Rational(1);
        report.chains.push_back(std::move(c));
    }
    bool values_ok = true;
    for (const auto& name : s.curve_names()) {
        if (contracted.contains(name))
            continue;
        auto v = pair(pullback, s.curve(name));
        values_ok = values_ok && v >= Rational(0);
        report.nef_table.push_back(NefEntry{name, v});
    }
    report.nef = values_ok && discrepancies_ok;
    return report;
}

Rational ksq_singular(const RationalClass& pullback)
{
    return pair(pullback, pullback);
}

} // namespace rbd
