#include "gframe/group.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

#include "gframe/errors.hpp"

namespace gframe {

bool FiniteGroup::is_abelian() const {
    for (int g = 0; g < order; ++g)
        for (int h = g + 1; h < order; ++h)
            if (mul(g, h) != mul(h, g)) return false;
    return true;
}

FiniteGroup build_group_from_table(const std::vector<std::vector<int>>& table) {
    const int n = static_cast<int>(table.size());
    if (n == 0) throw NotAGroupError("empty table", {-1, -1, -1});

    FiniteGroup g;
    g.order = n;
    g.table.resize(static_cast<size_t>(n) * n);
    for (int a = 0; a < n; ++a) {
        if (static_cast<int>(table[a].size()) != n)
            throw NotAGroupError("table is not square", {a, -1, -1});
        for (int b = 0; b < n; ++b) {
            int v = table[a][b];
            if (v < 0 || v >= n) throw NotAGroupError("entry out of range", {a, b, v});
            g.table[static_cast<size_t>(a) * n + b] = v;
        }
    }

    // Latin square property: every row and column is a permutation.
    for (int a = 0; a < n; ++a) {
        std::vector<bool> row(n, false), col(n, false);
        for (int b = 0; b < n; ++b) {
            if (row[g.mul(a, b)]) throw NotAGroupError("row is not a permutation", {a, b, -1});
            row[g.mul(a, b)] = true;
            if (col[g.mul(b, a)]) throw NotAGroupError("column is not a permutation", {a, b, -1});
            col[g.mul(b, a)] = true;
        }
    }

    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
                    throw NotAGroupError("associativity fails", {a, b, c});

    int e = -1;
    for (int cand = 0; cand < n; ++cand) {
        bool ok = true;
        for (int a = 0; a < n; ++a)
            if (g.mul(cand, a) != a || g.mul(a, cand) != a) {
                ok = false;
                break;
            }
        if (ok) {
            e = cand;
            break;
        }
    }
    if (e < 0) throw NotAGroupError("no two-sided identity", {-1, -1, -1});
    g.identity = e;

    g.inverses.assign(n, -1);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b)
            if (g.mul(a, b) == e && g.mul(b, a) == e) {
                g.inverses[a] = b;
                break;
            }
        if (g.inverses[a] < 0) throw NotAGroupError("element has no inverse", {a, -1, -1});
    }
    return g;
}

AbelianGroup build_abelian(const std::vector<int>& orders) {
    if (orders.empty()) throw EmptyOrdersError();
    for (int n : orders)
        if (n < 1) throw std::invalid_argument("cyclic factor order must be >= 1");

    AbelianGroup g;
    g.orders = orders;
    long long total = 1;
    for (int n : orders) {
        total *= n;
        if (total > (1 << 20)) throw std::invalid_argument("group order too large");
    }
    const int n = static_cast<int>(total);

    g.group.order = n;
    g.group.identity = 0;
    g.group.table.resize(static_cast<size_t>(n) * n);
    g.group.inverses.resize(n);

    const int k = static_cast<int>(orders.size());
    std::vector<int> da(k), db(k), sum(k);
    for (int a = 0; a < n; ++a) {
        da = g.decode(a);
        for (int b = 0; b < n; ++b) {
            db = g.decode(b);
            for (int j = 0; j < k; ++j) sum[j] = (da[j] + db[j]) % orders[j];
            g.group.table[static_cast<size_t>(a) * n + b] = g.encode(sum);
        }
        for (int j = 0; j < k; ++j) sum[j] = (orders[j] - da[j]) % orders[j];
        g.group.inverses[a] = g.encode(sum);
    }
    return g;
}

std::vector<int> AbelianGroup::decode(int g) const {
    std::vector<int> digits(orders.size());
    for (int j = static_cast<int>(orders.size()) - 1; j >= 0; --j) {
        digits[j] = g % orders[j];
        g /= orders[j];
    }
    return digits;
}

int AbelianGroup::encode(const std::vector<int>& digits) const {
    int idx = 0;
    for (size_t j = 0; j < orders.size(); ++j) idx = idx * orders[j] + digits[j];
    return idx;
}

int AbelianGroup::character_phase(int c, int g) const {
    // phase of chi_c(g) as a fraction m / order(): m = sum_j c_j a_j (N/n_j) mod N.
    const std::vector<int> cd = decode(c);
    const std::vector<int> gd = decode(g);
    const long long n = order();
    long long m = 0;
    for (size_t j = 0; j < orders.size(); ++j) {
        long long term = (static_cast<long long>(cd[j]) * gd[j]) % orders[j];
        m = (m + term * (n / orders[j])) % n;
    }
    return static_cast<int>(m);
}

std::complex<double> AbelianGroup::character_value(int c, int g) const {
    const double angle = 2.0 * std::numbers::pi * character_phase(c, g) / order();
    return std::polar(1.0, angle);
}

std::complex<double> Character::value(int g) const {
    long long n = 1;
    for (int o : orders) n *= o;
    std::vector<int> gd(orders.size());
    for (int j = static_cast<int>(orders.size()) - 1; j >= 0; --j) {
        gd[j] = g % orders[j];
        g /= orders[j];
    }
    long long m = 0;
    for (size_t j = 0; j < orders.size(); ++j) {
        long long term = (static_cast<long long>(exponents[j]) * gd[j]) % orders[j];
        m = (m + term * (n / orders[j])) % n;
    }
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(n));
}

std::vector<Character> characters(const AbelianGroup& g) {
    std::vector<Character> out;
    out.reserve(g.order());
    for (int c = 0; c < g.order(); ++c) out.push_back(Character{g.decode(c), g.orders});
    return out;
}

VerificationReport check_character_orthogonality(const AbelianGroup& g, double tol) {
    VerificationReport rep;
    rep.check = "character-orthogonality";
    rep.provenance.group = describe(g);
    rep.provenance.tolerance = tol;

    const int n = g.order();
    double max_dev = 0.0;
    std::vector<int64_t> worst;

    // <xi, chi> = (1/o(G)) sum_g xi(g) conj(chi(g))
    for (int c1 = 0; c1 < n; ++c1)
        for (int c2 = 0; c2 < n; ++c2) {
            std::complex<double> acc = 0.0;
            for (int x = 0; x < n; ++x)
                acc += g.character_value(c1, x) * std::conj(g.character_value(c2, x));
            acc /= static_cast<double>(n);
            const double dev = std::abs(acc - (c1 == c2 ? 1.0 : 0.0));
            if (dev > max_dev) {
                max_dev = dev;
                worst = {0, c1, c2};
            }
        }

    // dual identity: <g, h> = (1/o(G^)) sum_xi xi(g) conj(xi(h))
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            std::complex<double> acc = 0.0;
            for (int c = 0; c < n; ++c)
                acc += g.character_value(c, a) * std::conj(g.character_value(c, b));
            acc /= static_cast<double>(n);
            const double dev = std::abs(acc - (a == b ? 1.0 : 0.0));
            if (dev > max_dev) {
                max_dev = dev;
                worst = {1, a, b};
            }
        }

    rep.residuals["max_deviation"] = max_dev;
    rep.set(max_dev <= tol);
    if (!rep.passed()) rep.witnesses["worst_pair"] = worst;
    return rep;
}

std::vector<int> subgroup_from_generators(const FiniteGroup& g, const std::vector<int>& gens) {
    for (int x : gens)
        if (x < 0 || x >= g.order) throw std::invalid_argument("generator out of range");

    std::set<int> seen{g.identity};
    std::queue<int> todo;
    todo.push(g.identity);
    for (int x : gens)
        if (seen.insert(x).second) todo.push(x);

    while (!todo.empty()) {
        const int cur = todo.front();
        todo.pop();
        if (seen.insert(g.inv(cur)).second) todo.push(g.inv(cur));
        for (int x : gens) {
            if (seen.insert(g.mul(cur, x)).second) todo.push(g.mul(cur, x));
            if (seen.insert(g.mul(x, cur)).second) todo.push(g.mul(x, cur));
        }
    }

    std::vector<int> out(seen.begin(), seen.end());
    if (g.order % static_cast<int>(out.size()) != 0)
        throw std::logic_error("subgroup order does not divide group order");
    return out;
}

std::string describe(const FiniteGroup& g) {
    std::ostringstream os;
    os << "table-group(order=" << g.order << ")";
    return os.str();
}

std::string describe(const AbelianGroup& g) {
    std::ostringstream os;
    for (size_t j = 0; j < g.orders.size(); ++j) {
        if (j) os << "x";
        os << "Z_" << g.orders[j];
    }
    return os.str();
}

}  // namespace gframe
