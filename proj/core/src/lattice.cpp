#include <ale/lattice.hpp>

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>
#include <stdexcept>

namespace ale {

namespace {

std::string ename(int i) { return "E" + std::to_string(i); }

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

// ===========================================================================
// Models and divisor classes
// ===========================================================================

std::size_t SurfaceModel::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < basis_names.size(); ++i)
        if (basis_names[i] == name) return i;
    throw std::invalid_argument("no basis class named '" + name + "'");
}

bool same_model(const SurfaceModel& a, const SurfaceModel& b) {
    return a.basis_names == b.basis_names && a.gram == b.gram;
}

DivClass::DivClass(ModelPtr m, std::vector<long long> c)
    : model(std::move(m)), coeffs(std::move(c)) {
    if (!model) throw std::invalid_argument("divisor class without a model");
    if (coeffs.size() != model->rank())
        throw std::invalid_argument("coefficient count does not match basis");
}

DivClass DivClass::operator+(const DivClass& o) const {
    require(model && o.model && same_model(*model, *o.model),
            "divisor-class arithmetic across different models");
    std::vector<long long> c(coeffs.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = coeffs[i] + o.coeffs[i];
    return DivClass(model, std::move(c));
}

DivClass DivClass::operator-(const DivClass& o) const { return *this + (-o); }

DivClass DivClass::operator-() const {
    std::vector<long long> c(coeffs.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = -coeffs[i];
    return DivClass(model, std::move(c));
}

DivClass operator*(long long s, const DivClass& c) {
    std::vector<long long> v(c.coeffs.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = s * c.coeffs[i];
    return DivClass(c.model, std::move(v));
}

bool DivClass::operator==(const DivClass& o) const {
    return model && o.model && same_model(*model, *o.model) &&
           coeffs == o.coeffs;
}

std::string DivClass::str() const {
    std::string out;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        const long long c = coeffs[i];
        if (c == 0) continue;
        const long long mag = std::llabs(c);
        if (out.empty()) {
            if (c < 0) out += "-";
        } else {
            out += (c < 0) ? " - " : " + ";
        }
        if (mag != 1) out += std::to_string(mag);
        out += model->basis_names[i];
    }
    return out.empty() ? "0" : out;
}

long long pair(const DivClass& c1, const DivClass& c2) {
    require(c1.model && c2.model && same_model(*c1.model, *c2.model),
            "intersection pairing across different models");
    const auto& g = c1.model->gram;
    long long acc = 0;
    for (std::size_t i = 0; i < c1.coeffs.size(); ++i) {
        if (c1.coeffs[i] == 0) continue;
        for (std::size_t j = 0; j < c2.coeffs.size(); ++j)
            acc += c1.coeffs[i] * g[i][j] * c2.coeffs[j];
    }
    return acc;
}

// ===========================================================================
// Model constructors
// ===========================================================================

ModelPtr make_blown_up_plane(int n, std::vector<std::string> names) {
    require(n >= 0, "blown-up plane needs n >= 0");
    auto m = std::make_shared<SurfaceModel>();
    if (names.empty()) {
        names.push_back("H");
        for (int i = 1; i <= n; ++i) names.push_back(ename(i));
    }
    require(names.size() == static_cast<std::size_t>(n) + 1,
            "blown-up plane needs n+1 basis names");
    m->basis_names = std::move(names);
    const std::size_t r = m->basis_names.size();
    m->gram.assign(r, std::vector<long long>(r, 0));
    m->gram[0][0] = 1;
    for (std::size_t i = 1; i < r; ++i) m->gram[i][i] = -1;
    return m;
}

ModelPtr make_ruled_model(int ell) {
    require(ell >= 1, "ruled model needs l >= 1");
    auto m = std::make_shared<SurfaceModel>();
    m->basis_names.push_back("C");
    m->basis_names.push_back("D1");
    for (int i = 1; i <= 2 * ell; ++i) m->basis_names.push_back(ename(i));
    const std::size_t r = m->basis_names.size();
    m->gram.assign(r, std::vector<long long>(r, 0));
    m->gram[0][1] = m->gram[1][0] = 1;
    m->gram[1][1] = -ell;
    for (std::size_t i = 2; i < r; ++i) m->gram[i][i] = -1;
    return m;
}

namespace {

std::vector<std::string> dk_names(int k, bool extended) {
    std::vector<std::string> names{"H"};
    for (int i = 1; i <= k; ++i) names.push_back(ename(i));
    names.push_back("X");
    names.push_back("F");
    if (extended) names.push_back("C");
    return names;
}

std::vector<std::string> ek_names(int k, bool extended) {
    std::vector<std::string> names{"H"};
    for (int i = 1; i <= k - 1; ++i) names.push_back(ename(i));
    names.push_back("X");
    names.push_back("Y");
    names.push_back("F");
    if (extended) names.push_back("C");
    return names;
}

}  // namespace

ModelPtr make_dk_model(int k) {
    require(k >= 4, "D_k model needs k >= 4");
    return make_blown_up_plane(k + 2, dk_names(k, false));
}

ModelPtr make_ek_model(int k) {
    require(k >= 6 && k <= 8, "E_k model needs k in {6,7,8}");
    return make_blown_up_plane(k + 2, ek_names(k, false));
}

ModelPtr make_dk_model_extended(int k) {
    require(k >= 4, "D_k model needs k >= 4");
    return make_blown_up_plane(k + 3, dk_names(k, true));
}

ModelPtr make_ek_model_extended(int k) {
    require(k >= 6 && k <= 8, "E_k model needs k in {6,7,8}");
    return make_blown_up_plane(k + 3, ek_names(k, true));
}

DivClass basis_class(const ModelPtr& m, const std::string& name) {
    require(static_cast<bool>(m), "null model");
    std::vector<long long> c(m->rank(), 0);
    c[m->index_of(name)] = 1;
    return DivClass(m, std::move(c));
}

DivClass make_class(const ModelPtr& m, std::vector<long long> coeffs) {
    return DivClass(m, std::move(coeffs));
}

namespace {

// Shape tests on the Gram matrix, used to pick the anticanonical formula.
bool is_plane_gram(const SurfaceModel& m) {
    const std::size_t r = m.rank();
    if (r == 0) return false;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            const long long want = (i != j) ? 0 : (i == 0 ? 1 : -1);
            if (m.gram[i][j] != want) return false;
        }
    return true;
}

// Returns l >= 1 if the Gram is the ruled shape, 0 otherwise.
int ruled_gram_ell(const SurfaceModel& m) {
    const std::size_t r = m.rank();
    if (r < 2) return 0;
    if (m.gram[0][0] != 0 || m.gram[0][1] != 1 || m.gram[1][0] != 1) return 0;
    const long long ell = -m.gram[1][1];
    if (ell < 1) return 0;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            if ((i == 0 && j <= 1) || (i == 1 && j == 0)) continue;
            const long long want = (i == j) ? (i == 1 ? -ell : -1) : 0;
            if (m.gram[i][j] != want) return false;
        }
    return static_cast<int>(ell);
}

}  // namespace

DivClass anticanonical(const ModelPtr& m) {
    require(static_cast<bool>(m), "null model");
    const std::size_t r = m->rank();
    if (is_plane_gram(*m)) {
        std::vector<long long> c(r, -1);
        c[0] = 3;
        return DivClass(m, std::move(c));
    }
    if (const int ell = ruled_gram_ell(*m); ell > 0) {
        std::vector<long long> c(r, -1);
        c[0] = ell + 2;
        c[1] = 2;
        return DivClass(m, std::move(c));
    }
    throw std::invalid_argument("anticanonical: unknown model shape");
}

// ===========================================================================
// Exceptional-class enumeration
// ===========================================================================

namespace {

// Depth-first fill of (b_1, ..., b_n) subject to the two line equations,
// with the running linear and quadratic budgets.  A prefix dies as soon as
// the quadratic budget is negative, the Cauchy-Schwarz bound
// s_rem^2 <= m * q_rem fails, or the remaining coefficients cannot reach
// the linear budget even at the box walls.
void dfs_lines(int n, int idx, long long s_rem, long long q_rem, int e_bound,
               std::vector<long long>& coeffs,
               std::vector<std::vector<long long>>& found) {
    const int m = n - idx;
    if (q_rem < 0) return;
    if (m == 0) {
        if (s_rem == 0 && q_rem == 0) found.push_back(coeffs);
        return;
    }
    if (s_rem * s_rem > static_cast<long long>(m) * q_rem) return;
    if (std::llabs(s_rem) > static_cast<long long>(m) * e_bound) return;
    for (long long v = -e_bound; v <= e_bound; ++v) {
        coeffs[static_cast<std::size_t>(idx) + 1] = v;
        dfs_lines(n, idx + 1, s_rem - v, q_rem - v * v, e_bound, coeffs,
                  found);
    }
    coeffs[static_cast<std::size_t>(idx) + 1] = 0;
}

std::vector<std::vector<long long>> search_lines(int n, int h_bound,
                                                 int e_bound) {
    std::vector<std::vector<long long>> found;
    std::vector<long long> coeffs(static_cast<std::size_t>(n) + 1, 0);
    for (long long a = -h_bound; a <= h_bound; ++a) {
        coeffs[0] = a;
        // L^2 = -1 and -K.L = 1 become sum b_i = 1 - 3a and
        // sum b_i^2 = a^2 + 1.
        dfs_lines(n, 0, 1 - 3 * a, a * a + 1, e_bound, coeffs, found);
    }
    return found;
}

constexpr long long kKnownLineCounts[9] = {0, 1, 3, 6, 10, 16, 27, 56, 240};

}  // namespace

std::vector<DivClass> enumerate_lines(const ModelPtr& m, int bound) {
    require(static_cast<bool>(m), "null model");
    require(is_plane_gram(*m), "enumerate_lines needs a blown-up-plane model");
    const int n = static_cast<int>(m->rank()) - 1;
    require(n <= 8, "enumerate_lines supports n <= 8");
    require(bound >= 1, "enumerate_lines needs a positive bound");

    const int e_bound = std::max(3, bound - 4);
    auto found = search_lines(n, bound, e_bound);
    // Saturation check: enlarging the box must not add classes.
    auto wider = search_lines(n, bound + 2, e_bound + 2);
    if (wider.size() != found.size())
        throw std::runtime_error(
            "enumerate_lines: bound " + std::to_string(bound) +
            " is not saturated (" + std::to_string(found.size()) + " vs " +
            std::to_string(wider.size()) + " classes)");
    if (found.size() != static_cast<std::size_t>(kKnownLineCounts[n]))
        throw std::runtime_error(
            "enumerate_lines: found " + std::to_string(found.size()) +
            " classes for n=" + std::to_string(n) + ", expected " +
            std::to_string(kKnownLineCounts[n]));

    std::sort(found.begin(), found.end());
    std::vector<DivClass> out;
    out.reserve(found.size());
    for (auto& c : found) out.emplace_back(m, std::move(c));
    return out;
}

// ===========================================================================
// The D4 cubic's named classes
// ===========================================================================

namespace {

bool is_d4_basis(const SurfaceModel& m) {
    return m.basis_names ==
           std::vector<std::string>{"H", "E1", "E2", "E3", "E4", "X", "F"};
}

}  // namespace

std::map<std::string, DivClass> named_d4_classes(const ModelPtr& m) {
    require(static_cast<bool>(m) && is_d4_basis(*m) && is_plane_gram(*m),
            "named_d4_classes needs the plane basis (H, E1..E4, X, F)");
    std::map<std::string, DivClass> out;
    for (const auto& name : m->basis_names) out.emplace(name, basis_class(m, name));

    const auto cls = [&](std::vector<long long> c) {
        return DivClass(m, std::move(c));
    };
    //                 H   E1  E2  E3  E4   X   F
    out.emplace("E", cls({2, -1, -1, -1, -1, 0, -1}));
    out.emplace("G", cls({1, 0, 0, 0, 0, -1, -1}));
    out.emplace("C0", cls({2, -1, -1, -1, -1, -1, 0}));
    for (int i = 1; i <= 4; ++i) {
        std::vector<long long> ebar{1, 0, 0, 0, 0, -1, 0};
        ebar[static_cast<std::size_t>(i)] = -1;
        out.emplace("Ebar" + std::to_string(i), cls(std::move(ebar)));

        std::vector<long long> conic{2, -1, -1, -1, -1, -1, -1};
        conic[static_cast<std::size_t>(i)] = 0;
        out.emplace("C" + std::to_string(i), cls(std::move(conic)));

        for (int j = i + 1; j <= 4; ++j) {
            std::vector<long long> line{1, 0, 0, 0, 0, 0, 0};
            line[static_cast<std::size_t>(i)] = -1;
            line[static_cast<std::size_t>(j)] = -1;
            out.emplace("E" + std::to_string(i) + std::to_string(j),
                        cls(std::move(line)));
        }
    }
    return out;
}

EquivalenceReport check_equivalences(const ModelPtr& m) {
    const auto named = named_d4_classes(m);
    const auto& at = [&](const std::string& n) -> const DivClass& {
        return named.at(n);
    };

    EquivalenceReport rep;
    const DivClass d1 = at("F") + at("C1") + at("C2");
    const DivClass d2 = at("G") + at("C0") + at("E34");
    const DivClass d3 = at("E") + at("Ebar3") + at("Ebar4");
    rep.common_class = d1;
    rep.d_squared = pair(d1, d1);
    const DivClass mk = anticanonical(m);
    rep.minus_k_dot_d = pair(mk, d1);
    rep.genus_pairing = -rep.minus_k_dot_d + rep.d_squared;

    rep.checks.push_back({"F+C1+C2 == G+C0+E34", d1 == d2});
    rep.checks.push_back({"F+C1+C2 == E+Ebar3+Ebar4", d1 == d3});
    rep.checks.push_back({"D^2 == 1", rep.d_squared == 1});
    rep.checks.push_back({"-K.D == 3", rep.minus_k_dot_d == 3});
    rep.checks.push_back({"K.D + D^2 == -2", rep.genus_pairing == -2});
    rep.pass = std::all_of(rep.checks.begin(), rep.checks.end(),
                           [](const EquivalenceCheck& c) { return c.pass; });

    rep.printed_variant = DivClass(m, {4, -1, -1, 1, 1, -2, -1});
    rep.printed_matches_geometric = (rep.printed_variant == d1);
    rep.printed_square = pair(rep.printed_variant, rep.printed_variant);
    return rep;
}

// ===========================================================================
// Central divisors and root bases
// ===========================================================================

namespace {

// E = 2H - sum E_i - F and Ebar_i = H - X - E_i on a plane model whose
// basis carries names E1..E_m, X, F.
DivClass plane_conic_class(const ModelPtr& m, int last_e) {
    std::vector<long long> c(m->rank(), 0);
    c[0] = 2;
    for (int i = 1; i <= last_e; ++i) c[m->index_of(ename(i))] = -1;
    c[m->index_of("F")] = -1;
    return DivClass(m, std::move(c));
}

DivClass plane_ebar_class(const ModelPtr& m, int i) {
    std::vector<long long> c(m->rank(), 0);
    c[0] = 1;
    c[m->index_of("X")] = -1;
    c[m->index_of(ename(i))] = -1;
    return DivClass(m, std::move(c));
}

}  // namespace

DivClass central_divisor(const std::string& type_label, int k) {
    if (type_label == "E") {
        require(k >= 6 && k <= 8, "central_divisor: E_k needs k in {6,7,8}");
        const ModelPtr m = make_ek_model(k);
        DivClass d = plane_conic_class(m, k - 1);
        for (int i = 3; i <= k - 1; ++i) d = d + plane_ebar_class(m, i);
        return d;
    }
    if (type_label == "D") {
        require(k >= 4, "central_divisor: D_k needs k >= 4");
        const ModelPtr m = make_dk_model(k);
        DivClass d = plane_conic_class(m, k);
        for (int i = 3; i <= k; ++i) d = d + plane_ebar_class(m, i);
        return d;
    }
    if (type_label == "A") {
        require(k >= 1 && k % 2 == 1, "central_divisor: A_k needs odd k");
        const int ell = (k + 1) / 2;
        const ModelPtr m = make_ruled_model(ell);
        // D = D_1 + sum_{i<=l} (C - E_i) = l C + D_1 - sum_{i<=l} E_i.
        std::vector<long long> c(m->rank(), 0);
        c[0] = ell;
        c[1] = 1;
        for (int i = 1; i <= ell; ++i) c[m->index_of(ename(i))] = -1;
        return DivClass(m, std::move(c));
    }
    throw std::invalid_argument("central_divisor: unknown type '" +
                                type_label + "'");
}

namespace {

// Chain E2-E1, ..., E_last-E_{last-1} on any model carrying those names.
std::vector<DivClass> e_chain(const ModelPtr& m, int last) {
    std::vector<DivClass> out;
    for (int i = 1; i < last; ++i) {
        std::vector<long long> c(m->rank(), 0);
        c[m->index_of(ename(i + 1))] = 1;
        c[m->index_of(ename(i))] = -1;
        out.emplace_back(m, std::move(c));
    }
    return out;
}

DivClass p_class(const ModelPtr& m) {
    std::vector<long long> c(m->rank(), 0);
    c[0] = 1;
    c[m->index_of("E1")] = -1;
    c[m->index_of("E2")] = -1;
    c[m->index_of("X")] = -1;
    return DivClass(m, std::move(c));
}

// aH - sum of selected E_i - bX - cY for the extra E_k generators.
DivClass ek_extra(const ModelPtr& m, long long a, int first_e, int last_e,
                  long long b, long long c) {
    std::vector<long long> v(m->rank(), 0);
    v[0] = a;
    for (int i = first_e; i <= last_e; ++i) v[m->index_of(ename(i))] = -1;
    v[m->index_of("X")] = -b;
    v[m->index_of("Y")] = -c;
    return DivClass(m, std::move(v));
}

}  // namespace

std::vector<DivClass> orthogonal_root_basis(const std::string& type_label,
                                            int k) {
    if (type_label == "A") {
        require(k >= 1 && k % 2 == 1, "orthogonal_root_basis: A_k needs odd k");
        const ModelPtr m = make_ruled_model((k + 1) / 2);
        return e_chain(m, k + 1);
    }
    if (type_label == "D") {
        require(k >= 4, "orthogonal_root_basis: D_k needs k >= 4");
        const ModelPtr m = make_dk_model(k);
        std::vector<DivClass> out{p_class(m)};
        auto chain = e_chain(m, k);
        out.insert(out.end(), chain.begin(), chain.end());
        return out;
    }
    if (type_label == "E") {
        require(k >= 6 && k <= 8, "orthogonal_root_basis: E_k needs k in {6,7,8}");
        const ModelPtr m = make_ek_model(k);
        std::vector<DivClass> out;
        const DivClass p = p_class(m);
        if (k == 6) {
            out.push_back(ek_extra(m, 2, 2, 5, 1, 1));  // Q
            out.push_back(-p);
        } else if (k == 7) {
            const DivClass r = ek_extra(m, 2, 3, 6, 1, 1);  // R
            out.push_back(p + r);
            out.push_back(r);
        } else {
            out.push_back(ek_extra(m, 3, 2, 7, 2, 1));  // S
            out.push_back(-p);
        }
        auto chain = e_chain(m, k - 1);
        out.insert(out.end(), chain.begin(), chain.end());
        return out;
    }
    throw std::invalid_argument("orthogonal_root_basis: unknown type '" +
                                type_label + "'");
}

// ===========================================================================
// Dynkin verification
// ===========================================================================

namespace {

using EdgeSet = std::set<std::pair<int, int>>;

void add_edge(EdgeSet& e, int i, int j) {
    e.emplace(std::min(i, j), std::max(i, j));
}

// Reference Dynkin diagrams on vertices 0..k-1.  For D_k the two short
// prongs are vertices 0 and 1, both attached to vertex 2; for E_k vertex 0
// is the branch vertex's extra neighbour and 1..k-1 form the long chain
// with the branch at vertex 3.
EdgeSet reference_diagram(char type, int k) {
    EdgeSet e;
    if (type == 'A') {
        for (int i = 0; i + 1 < k; ++i) add_edge(e, i, i + 1);
    } else if (type == 'D') {
        add_edge(e, 0, 2);
        add_edge(e, 1, 2);
        for (int i = 2; i + 1 < k; ++i) add_edge(e, i, i + 1);
    } else {
        for (int i = 1; i + 1 < k; ++i) add_edge(e, i, i + 1);
        add_edge(e, 0, 3);
    }
    return e;
}

std::vector<int> degree_sequence(int k, const EdgeSet& e) {
    std::vector<int> deg(static_cast<std::size_t>(k), 0);
    for (const auto& [i, j] : e) {
        ++deg[static_cast<std::size_t>(i)];
        ++deg[static_cast<std::size_t>(j)];
    }
    return deg;
}

// Brute-force graph isomorphism; k <= 8 keeps the permutation count tiny.
bool graphs_isomorphic(int k, const EdgeSet& a, const EdgeSet& b) {
    if (a.size() != b.size()) return false;
    auto da = degree_sequence(k, a);
    auto db = degree_sequence(k, b);
    std::sort(da.begin(), da.end());
    std::sort(db.begin(), db.end());
    if (da != db) return false;

    std::vector<int> perm(static_cast<std::size_t>(k));
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (const auto& [i, j] : a) {
            const int pi = perm[static_cast<std::size_t>(i)];
            const int pj = perm[static_cast<std::size_t>(j)];
            if (!b.count({std::min(pi, pj), std::max(pi, pj)})) {
                ok = false;
                break;
            }
        }
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

// Exact integer determinant by fraction-free (Bareiss) elimination.  The
// inputs are tiny Gram matrices, so long long never overflows.
long long det_exact(std::vector<std::vector<long long>> m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    long long prev = 1;
    long long sign = 1;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (m[i][i] == 0) {
            std::size_t piv = i + 1;
            while (piv < n && m[piv][i] == 0) ++piv;
            if (piv == n) return 0;
            std::swap(m[i], m[piv]);
            sign = -sign;
        }
        for (std::size_t r = i + 1; r < n; ++r)
            for (std::size_t c = i + 1; c < n; ++c)
                m[r][c] = (m[r][c] * m[i][i] - m[r][i] * m[i][c]) / prev;
        prev = m[i][i];
    }
    return sign * m[n - 1][n - 1];
}

long long discriminant_for(char type, int k) {
    switch (type) {
        case 'A': return k + 1;
        case 'D': return 4;
        default: return k == 6 ? 3 : (k == 7 ? 2 : 1);
    }
}

}  // namespace

DynkinReport verify_dynkin(const std::vector<DivClass>& basis,
                           const std::string& type_label) {
    require(type_label.size() >= 2, "verify_dynkin: malformed type label");
    const char type = type_label[0];
    require(type == 'A' || type == 'D' || type == 'E',
            "verify_dynkin: type must be A, D or E");
    const int k = std::stoi(type_label.substr(1));
    require(type != 'D' || k >= 4, "verify_dynkin: D_k needs k >= 4");
    require(type != 'E' || (k >= 6 && k <= 8),
            "verify_dynkin: E_k needs k in {6,7,8}");
    require(basis.size() == static_cast<std::size_t>(k),
            "verify_dynkin: basis size does not match type label");

    DynkinReport rep;
    rep.type_label = type_label;
    rep.basis = basis;
    rep.expected_discriminant = discriminant_for(type, k);

    const std::size_t n = basis.size();
    rep.gram_of_basis.assign(n, std::vector<long long>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            rep.gram_of_basis[i][j] = pair(basis[i], basis[j]);

    rep.pairings_ok = true;
    EdgeSet edges;
    for (std::size_t i = 0; i < n; ++i) {
        rep.self_intersections.push_back(rep.gram_of_basis[i][i]);
        if (rep.gram_of_basis[i][i] != -2) rep.pairings_ok = false;
        for (std::size_t j = i + 1; j < n; ++j) {
            const long long p = rep.gram_of_basis[i][j];
            if (p != 0) {
                if (std::llabs(p) != 1) rep.pairings_ok = false;
                add_edge(edges, static_cast<int>(i), static_cast<int>(j));
                rep.adjacency_graph.emplace_back(static_cast<int>(i),
                                                 static_cast<int>(j));
            }
        }
    }

    rep.graph_iso_to_dynkin =
        rep.pairings_ok && graphs_isomorphic(k, edges, reference_diagram(type, k));

    // Sign vector by propagation: Dynkin diagrams are trees, so fixing
    // eps_0 = +1 and walking edges with eps_j = -eps_i * pair(b_i, b_j)
    // determines eps when the graph is connected; afterwards every edge is
    // re-checked so a non-tree graph cannot sneak through.
    if (rep.pairings_ok) {
        std::vector<int> eps(n, 0);
        std::vector<std::size_t> queue{0};
        eps[0] = 1;
        while (!queue.empty()) {
            const std::size_t i = queue.back();
            queue.pop_back();
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i || rep.gram_of_basis[i][j] == 0 || eps[j] != 0)
                    continue;
                eps[j] = -eps[i] * static_cast<int>(rep.gram_of_basis[i][j]);
                queue.push_back(j);
            }
        }
        bool ok = std::all_of(eps.begin(), eps.end(),
                              [](int e) { return e != 0; });
        for (std::size_t i = 0; ok && i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                const long long p = rep.gram_of_basis[i][j];
                if (p != 0 && eps[i] * eps[j] * p != -1) ok = false;
            }
        if (ok) rep.sign_vector = eps;
    }

    rep.discriminant = std::llabs(det_exact(rep.gram_of_basis));
    rep.pass = rep.pairings_ok && rep.graph_iso_to_dynkin &&
               rep.sign_vector.has_value() &&
               rep.discriminant == rep.expected_discriminant;
    return rep;
}

}  // namespace ale
