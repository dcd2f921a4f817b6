#include "vmet/amalgam.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

namespace vmet {

namespace {

using Kind = AmalgamError::Kind;

[[noreturn]] void fail(Kind k, const std::string& what) { throw AmalgamError(k, what); }

void check_point(const FiniteMetricSpace& space, std::size_t p, const char* who) {
    if (p >= space.size())
        throw std::invalid_argument(std::string(who) + ": point index " + std::to_string(p) + " out of range");
}

void check_spectrum(const FiniteMetricSpace& space, const ValueSet& V, const char* who) {
    for (std::size_t i = 0; i < space.size(); ++i)
        for (std::size_t j = i + 1; j < space.size(); ++j)
            if (!V.contains(space.d(i, j)))
                throw std::invalid_argument(std::string(who) + ": distance " + space.d(i, j).str() + " between " +
                                            space.label(i) + " and " + space.label(j) + " is outside the value set");
}

void check_agreement(const FiniteMetricSpace& m1, const FiniteMetricSpace& m2, const char* who) {
    for (std::size_t i = 0; i < m1.size(); ++i) {
        const auto i2 = m2.find(m1.label(i));
        if (!i2) continue;
        for (std::size_t j = i + 1; j < m1.size(); ++j) {
            const auto j2 = m2.find(m1.label(j));
            if (!j2) continue;
            if (m1.d(i, j) != m2.d(*i2, *j2))
                throw std::invalid_argument(std::string(who) + ": shared points " + m1.label(i) + ", " + m1.label(j) +
                                            " disagree: " + m1.d(i, j).str() + " vs " + m2.d(*i2, *j2).str());
        }
    }
}

// Least positive value of V within [lo, hi] (hi unbounded when nullopt).
std::optional<Rational> least_admissible(const ValueSet& V, const Rational& lo, const std::optional<Rational>& hi) {
    for (const Rational& v : V.values()) {
        if (!v.is_positive() || v < lo) continue;
        if (hi && *hi < v) break;  // values ascend; nothing later fits either
        return v;
    }
    return std::nullopt;
}

// Ascending size-s index tuples drawn from the ascending pool `base`.
template <typename Visit>
void for_each_combination(const std::vector<std::size_t>& base, std::size_t s, Visit&& visit) {
    if (s > base.size()) return;
    std::vector<std::size_t> idx(s);
    for (std::size_t i = 0; i < s; ++i) idx[i] = i;
    std::vector<std::size_t> pick(s);
    for (;;) {
        for (std::size_t i = 0; i < s; ++i) pick[i] = base[idx[i]];
        visit(pick);
        bool advanced = false;
        for (std::size_t i = s; i-- > 0;) {
            if (idx[i] < base.size() - s + i) {
                ++idx[i];
                for (std::size_t j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
                advanced = true;
                break;
            }
        }
        if (!advanced) return;
    }
}

// All distance vectors pool^s in lexicographic order.
template <typename Visit>
void for_each_vector(std::size_t pool_size, std::size_t s, Visit&& visit) {
    if (pool_size == 0) return;
    std::vector<std::size_t> pick(s, 0);
    for (;;) {
        visit(pick);
        std::size_t pos = s;
        bool advanced = false;
        while (pos-- > 0) {
            if (++pick[pos] < pool_size) {
                advanced = true;
                break;
            }
            pick[pos] = 0;
        }
        if (!advanced) return;
    }
}

// Fisher-Yates with the standardized mt19937_64 stream, so the order is
// reproducible across platforms (std::shuffle is not).
void deterministic_shuffle(std::vector<DSocket>& v, std::uint64_t rng_seed, std::uint64_t salt) {
    std::seed_seq seq{rng_seed, salt};
    std::mt19937_64 rng(seq);
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng() % i]);
}

}  // namespace

bool validate_dsocket(const FiniteMetricSpace& space, const DSocket& socket) {
    for (const auto& e : socket.entries) check_point(space, e.b, "socket");
    const auto& vs = space.value_set();
    for (const auto& e : socket.entries) {
        if (e.d.is_negative()) return false;
        if (vs && !vs->contains(e.d)) return false;
    }
    const std::size_t n = socket.entries.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const Rational& di = socket.entries[i].d;
            const Rational& dj = socket.entries[j].d;
            const Rational& dij = space.d(socket.entries[i].b, socket.entries[j].b);
            if (di + dj < dij) return false;
            if (di + dij < dj) return false;
            if (dj + dij < di) return false;
        }
    return true;
}

std::vector<std::size_t> orbit(const FiniteMetricSpace& space, const DSocket& socket) {
    for (const auto& e : socket.entries) check_point(space, e.b, "orbit");
    std::vector<std::size_t> out;
    for (std::size_t s = 0; s < space.size(); ++s) {
        bool hit = true;
        for (const auto& e : socket.entries)
            if (space.d(s, e.b) != e.d) {
                hit = false;
                break;
            }
        if (hit) out.push_back(s);
    }
    return out;
}

AmalgamResult one_point_amalgam(const FiniteMetricSpace& m1, const FiniteMetricSpace& m2, const ValueSet& V) {
    std::vector<std::string> only1, only2;
    for (const auto& l : m1.labels())
        if (!m2.find(l)) only1.push_back(l);
    for (const auto& l : m2.labels())
        if (!m1.find(l)) only2.push_back(l);
    if (only1.size() != 1 || only2.size() != 1)
        throw std::invalid_argument("one_point_amalgam: each side must contribute exactly one point the other lacks");
    check_agreement(m1, m2, "one_point_amalgam");
    check_spectrum(m1, V, "one_point_amalgam");
    check_spectrum(m2, V, "one_point_amalgam");

    const std::string& x1 = only1.front();
    const std::string& x2 = only2.front();
    const std::size_t i1 = m1.index_of(x1);
    const std::size_t i2 = m2.index_of(x2);

    // a' = max |d1 - d2|, a = min (d1 + d2) over the shared points.
    Rational lo(0);
    std::optional<Rational> hi;
    for (std::size_t z = 0; z < m1.size(); ++z) {
        if (z == i1) continue;
        const auto z2 = m2.find(m1.label(z));
        if (!z2) continue;
        const Rational d1 = m1.d(i1, z);
        const Rational d2 = m2.d(i2, *z2);
        lo = max(lo, (d1 - d2).abs());
        const Rational sum = d1 + d2;
        if (!hi || sum < *hi) hi = sum;
    }

    std::vector<Rational> admissible;
    for (const Rational& v : V.values()) {
        if (!v.is_positive() || v < lo) continue;
        if (hi && *hi < v) break;
        admissible.push_back(v);
    }
    if (admissible.empty())
        fail(Kind::NoAmalgam, "no positive value of the value set lies in [" + lo.str() + ", " +
                                  (hi ? hi->str() : "unbounded") + "] for " + x1 + " and " + x2);
    const Rational w = admissible.front();

    std::vector<std::string> labels = m1.labels();
    labels.push_back(x2);
    const std::size_t n = labels.size();
    std::vector<std::vector<Rational>> dist(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < m1.size(); ++i)
        for (std::size_t j = 0; j < m1.size(); ++j) dist[i][j] = m1.d(i, j);
    for (std::size_t i = 0; i < m1.size(); ++i) {
        const Rational v = i == i1 ? w : m2.d(i2, m2.index_of(labels[i]));
        dist[i][n - 1] = v;
        dist[n - 1][i] = v;
    }

    AmalgamResult result{FiniteMetricSpace::make(std::move(labels), std::move(dist), V), {}, std::move(admissible)};
    result.chosen.push_back({x1, x2, w});
    return result;
}

AmalgamResult disjoint_amalgam(const FiniteMetricSpace& m1, const FiniteMetricSpace& m2, const ValueSet& V) {
    check_agreement(m1, m2, "disjoint_amalgam");
    check_spectrum(m1, V, "disjoint_amalgam");
    check_spectrum(m2, V, "disjoint_amalgam");

    bool m1_inside = true;
    for (const auto& l : m1.labels())
        if (!m2.find(l)) {
            m1_inside = false;
            break;
        }
    if (m1_inside) return {FiniteMetricSpace::make(m2.labels(), m2.matrix(), V), {}, {}};

    std::vector<std::string> labels = m1.labels();
    std::vector<std::size_t> new2;  // result indices of points only in m2
    for (const auto& l : m2.labels())
        if (!m1.find(l)) {
            new2.push_back(labels.size());
            labels.push_back(l);
        }
    const std::size_t n = labels.size();

    std::vector<std::vector<std::optional<Rational>>> dist(n, std::vector<std::optional<Rational>>(n));
    for (std::size_t i = 0; i < n; ++i) dist[i][i] = Rational(0);
    auto seed_from = [&](const FiniteMetricSpace& m) {
        for (std::size_t i = 0; i < n; ++i) {
            const auto mi = m.find(labels[i]);
            if (!mi) continue;
            for (std::size_t j = i + 1; j < n; ++j) {
                const auto mj = m.find(labels[j]);
                if (!mj) continue;
                dist[i][j] = m.d(*mi, *mj);
                dist[j][i] = dist[i][j];
            }
        }
    };
    seed_from(m1);
    seed_from(m2);

    std::vector<std::size_t> new1;  // result indices of points only in m2's complement, i.e. only in m1
    for (std::size_t i = 0; i < m1.size(); ++i)
        if (!m2.find(labels[i])) new1.push_back(i);

    std::vector<AmalgamResult::Chosen> chosen;
    // One unknown pair at a time, bounds over everything known so far.
    for (std::size_t y : new2)
        for (std::size_t x : new1) {
            if (dist[x][y]) continue;
            Rational lo(0);
            std::optional<Rational> hi;
            for (std::size_t z = 0; z < n; ++z) {
                if (z == x || z == y || !dist[x][z] || !dist[y][z]) continue;
                lo = max(lo, (*dist[x][z] - *dist[y][z]).abs());
                const Rational sum = *dist[x][z] + *dist[y][z];
                if (!hi || sum < *hi) hi = sum;
            }
            const auto w = least_admissible(V, lo, hi);
            if (!w)
                fail(Kind::NoAmalgam, "no positive value of the value set lies in [" + lo.str() + ", " +
                                          (hi ? hi->str() : "unbounded") + "] for " + labels[x] + " and " + labels[y]);
            dist[x][y] = *w;
            dist[y][x] = *w;
            chosen.push_back({labels[x], labels[y], *w});
        }

    std::vector<std::vector<Rational>> full(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) full[i][j] = *dist[i][j];
    return {FiniteMetricSpace::make(std::move(labels), std::move(full), V), std::move(chosen), {}};
}

RealizeResult realize_socket(const FiniteMetricSpace& space, const DSocket& socket, const ValueSet& V,
                             std::optional<std::string> new_label) {
    if (socket.entries.empty()) fail(Kind::InvalidSocket, "realize_socket: socket must have at least one entry");
    if (!validate_dsocket(space, socket)) fail(Kind::InvalidSocket, "realize_socket: socket fails its triangle conditions");
    for (const auto& e : socket.entries) {
        if (!e.d.is_positive())
            fail(Kind::InvalidSocket, "realize_socket: distance to " + space.label(e.b) + " must be positive");
        if (!V.contains(e.d))
            fail(Kind::InvalidSocket, "realize_socket: distance " + e.d.str() + " is outside the value set");
    }
    check_spectrum(space, V, "realize_socket");

    std::string label;
    if (new_label) {
        if (space.find(*new_label))
            throw std::invalid_argument("realize_socket: label " + *new_label + " already taken");
        label = *new_label;
    } else {
        for (std::size_t k = space.size();; ++k) {
            label = "p" + std::to_string(k);
            if (!space.find(label)) break;
        }
    }

    // Span: the socket's vertices in point order plus the new point.
    std::vector<std::size_t> verts;
    for (const auto& e : socket.entries) verts.push_back(e.b);
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    auto dist_to_new = [&](std::size_t v) -> const Rational& {
        for (const auto& e : socket.entries)
            if (e.b == v) return e.d;
        throw std::logic_error("realize_socket: vertex lookup failed");
    };

    const std::size_t k = verts.size();
    std::vector<std::string> span_labels;
    for (std::size_t v : verts) span_labels.push_back(space.label(v));
    span_labels.push_back(label);
    std::vector<std::vector<Rational>> span(k + 1, std::vector<Rational>(k + 1, Rational(0)));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) span[i][j] = space.d(verts[i], verts[j]);
    for (std::size_t i = 0; i < k; ++i) {
        span[i][k] = dist_to_new(verts[i]);
        span[k][i] = span[i][k];
    }
    const FiniteMetricSpace b = FiniteMetricSpace::make(std::move(span_labels), std::move(span), V);

    AmalgamResult glued = disjoint_amalgam(space, b, V);
    const std::size_t new_idx = glued.space.size() - 1;
    if (glued.space.label(new_idx) != label) throw std::logic_error("realize_socket: new point landed out of order");
    for (const auto& e : socket.entries)
        if (glued.space.d(new_idx, e.b) != e.d) throw std::logic_error("realize_socket: socket distance not preserved");
    return {std::move(glued.space), new_idx};
}

UrysohnResult urysohn_approximant(const ValueSet& V, const std::optional<FiniteMetricSpace>& seed,
                                  std::size_t max_points, std::uint64_t rng_seed) {
    if (max_points == 0) throw std::invalid_argument("urysohn_approximant: max_points must be positive");
    if (!four_values_check(V).ok())
        fail(Kind::FourValuesFailure, "urysohn_approximant: the value set fails the four-values condition");

    UrysohnResult result{seed ? FiniteMetricSpace::make(seed->labels(), seed->matrix(), V)
                              : FiniteMetricSpace::make({"p0"}, {{Rational(0)}}, V),
                         0,
                         {}};
    FiniteMetricSpace& space = result.space;

    const std::vector<Rational> pool = V.positives();

    // Tier m: every valid socket whose highest vertex is point m-1, in
    // (size, vertex set, distance vector) order before the shuffle.
    auto tier_sockets = [&](std::size_t m, const FiniteMetricSpace& sp) {
        std::vector<DSocket> tier;
        std::vector<std::size_t> below(m - 1);
        for (std::size_t i = 0; i + 1 < m; ++i) below[i] = i;
        for (std::size_t s = 1; s <= m; ++s) {
            for_each_combination(below, s - 1, [&](const std::vector<std::size_t>& rest) {
                std::vector<std::size_t> verts = rest;
                verts.push_back(m - 1);
                for_each_vector(pool.size(), s, [&](const std::vector<std::size_t>& pick) {
                    DSocket sk;
                    for (std::size_t i = 0; i < s; ++i) sk.entries.push_back({verts[i], pool[pick[i]]});
                    if (validate_dsocket(sp, sk)) tier.push_back(std::move(sk));
                });
            });
        }
        return tier;
    };

    // Tier size is Theta(|pool|^m); the budget normally runs out long before
    // that bites, but cap the total enumeration so degenerate value sets
    // (everything realized, huge max_points) terminate.
    constexpr std::size_t kEnumerationBudget = std::size_t{1} << 21;
    std::size_t enumerated = 0;

    std::size_t step = 0;
    for (std::size_t m = 1; m <= space.size() && space.size() < max_points; ++m) {
        std::vector<DSocket> tier = tier_sockets(m, space);
        enumerated += tier.size();
        deterministic_shuffle(tier, rng_seed, m);
        for (const DSocket& sk : tier) {
            if (space.size() >= max_points) break;
            if (!orbit(space, sk).empty()) continue;
            RealizeResult realized = realize_socket(space, sk, V);
            const std::string fresh = realized.space.label(realized.new_point);
            space = std::move(realized.space);
            result.log.push_back({step++, sk, fresh});
        }
        if (enumerated > kEnumerationBudget) break;
    }

    // Audit the guarantee directly: k is the last prefix whose sockets are
    // all realized in the final space.
    enumerated = 0;
    for (std::size_t m = 1; m <= space.size(); ++m) {
        const std::vector<DSocket> tier = tier_sockets(m, space);
        enumerated += tier.size();
        bool complete = true;
        for (const DSocket& sk : tier)
            if (orbit(space, sk).empty()) {
                complete = false;
                break;
            }
        if (!complete) break;
        result.realized_prefix = m;
        if (enumerated > kEnumerationBudget) break;
    }
    return result;
}

DSocket rim_extend(const FiniteMetricSpace& space, const DSocket& socket, std::size_t a, const Rational& r) {
    check_point(space, a, "rim_extend");
    if (!validate_dsocket(space, socket))
        fail(Kind::PreconditionViolated, "rim_extend: the socket is not valid");
    bool witnessed = false;
    for (std::size_t y : orbit(space, socket))
        if (space.d(a, y) <= r) {
            witnessed = true;
            break;
        }
    if (!witnessed) fail(Kind::PreconditionViolated, "rim_extend: no orbit point within " + r.str() + " of " + space.label(a));
    for (const auto& e : socket.entries)
        if (space.d(a, e.b) < r)
            fail(Kind::PreconditionViolated,
                 "rim_extend: d(" + space.label(a) + ", " + space.label(e.b) + ") < " + r.str());

    // The three triangle conditions of the extended socket follow from the
    // hypotheses; verify them anyway so the returned socket is valid by
    // construction.
    for (const auto& e : socket.entries) {
        const Rational& dab = space.d(a, e.b);
        if (r + e.d < dab)
            fail(Kind::PreconditionViolated, "rim_extend: r + d_i < d(a, " + space.label(e.b) + ")");
        if (e.d + dab < r) fail(Kind::PreconditionViolated, "rim_extend: d_i + d(a, b_i) < r at " + space.label(e.b));
        if (r + dab < e.d) fail(Kind::PreconditionViolated, "rim_extend: r + d(a, b_i) < d_i at " + space.label(e.b));
    }
    DSocket extended = socket;
    extended.entries.push_back({a, r});
    return extended;
}

HolesReport holes_check(const FiniteMetricSpace& space, const std::vector<std::size_t>& centers,
                        const std::vector<Rational>& radii, std::size_t socket_size_cap) {
    if (centers.size() != radii.size())
        throw std::invalid_argument("holes_check: centers and radii must pair up");
    for (std::size_t c : centers) check_point(space, c, "holes_check");
    for (const Rational& r : radii)
        if (!r.is_positive()) throw std::invalid_argument("holes_check: radii must be positive");
    for (std::size_t i = 0; i < centers.size(); ++i)
        for (std::size_t j = i + 1; j < centers.size(); ++j)
            if (space.d(centers[i], centers[j]) < radii[i] + radii[j])
                fail(Kind::HypothesisViolated, "holes_check: balls at " + space.label(centers[i]) + " and " +
                                                   space.label(centers[j]) + " are not separated");

    HolesReport report;
    std::vector<char> inside(space.size(), 0);
    for (std::size_t x = 0; x < space.size(); ++x)
        for (std::size_t i = 0; i < centers.size(); ++i)
            if (space.d(centers[i], x) < radii[i]) {
                inside[x] = 1;
                break;
            }
    std::vector<std::size_t> complement;
    for (std::size_t x = 0; x < space.size(); ++x)
        (inside[x] ? report.removed : complement).push_back(x);

    const std::vector<Rational> pool =
        space.value_set() ? space.value_set()->positives() : [&] {
            std::vector<Rational> p = space.spectrum();
            p.erase(std::remove_if(p.begin(), p.end(), [](const Rational& v) { return !v.is_positive(); }), p.end());
            return p;
        }();

    for (std::size_t s = 1; s <= std::min(socket_size_cap, complement.size()); ++s) {
        for_each_combination(complement, s, [&](const std::vector<std::size_t>& verts) {
            for_each_vector(pool.size(), s, [&](const std::vector<std::size_t>& pick) {
                DSocket sk;
                for (std::size_t i = 0; i < s; ++i) sk.entries.push_back({verts[i], pool[pick[i]]});
                if (!validate_dsocket(space, sk)) return;
                ++report.sockets_checked;
                const std::vector<std::size_t> orb = orbit(space, sk);
                if (orb.empty()) {
                    ++report.empty_orbit;
                    return;
                }
                for (std::size_t y : orb)
                    if (!inside[y]) {
                        ++report.realized;
                        return;
                    }
                // Every witness sits inside some removed ball: try to extend
                // the socket along that ball's rim.
                const std::size_t y = orb.front();
                std::size_t ball = centers.size();
                for (std::size_t i = 0; i < centers.size(); ++i)
                    if (space.d(centers[i], y) < radii[i]) {
                        ball = i;
                        break;
                    }
                if (ball == centers.size()) throw std::logic_error("holes_check: witness escaped every ball");
                try {
                    rim_extend(space, sk, centers[ball], radii[ball]);
                    ++report.rim_pending;
                } catch (const AmalgamError& e) {
                    report.violations.push_back({sk, e.what()});
                }
            });
        });
    }
    return report;
}

OrbitDiameter orbit_diameter_check(const FiniteMetricSpace& space, const DSocket& socket) {
    if (socket.entries.empty()) fail(Kind::InvalidSocket, "orbit_diameter_check: socket must have at least one entry");
    if (!validate_dsocket(space, socket))
        fail(Kind::InvalidSocket, "orbit_diameter_check: socket fails its triangle conditions");
    OrbitDiameter out{socket.entries.front().d, true, orbit(space, socket)};
    for (const auto& e : socket.entries) out.ell = min(out.ell, e.d);
    if (out.orbit_points.empty()) fail(Kind::EmptyOrbit, "orbit_diameter_check: the socket has no witness");
    const Rational bound = out.ell + out.ell;
    for (std::size_t i = 0; i < out.orbit_points.size() && out.within_bound; ++i)
        for (std::size_t j = i + 1; j < out.orbit_points.size(); ++j)
            if (space.d(out.orbit_points[i], out.orbit_points[j]) > bound) {
                out.within_bound = false;
                break;
            }
    return out;
}

}  // namespace vmet
