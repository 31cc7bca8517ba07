#include "weil/roots.hpp"

#include "weil/error.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numeric>

namespace weil {

// --- Sturm sequences -------------------------------------------------------

SturmSequence::SturmSequence(const Poly& f) {
    if (f.is_zero()) throw Error(ErrorKind::NotSquarefree, "zero polynomial");
    if (!is_squarefree(f)) throw Error(ErrorKind::NotSquarefree, f.to_string() + " has a repeated factor");
    // Positive rescaling keeps every sign intact and the coefficients small.
    auto tidy = [](const Poly& p) { return p.is_zero() ? p : Rational(1 / abs(p.leading())) * p; };
    chain_.push_back(tidy(f));
    if (f.degree() == 0) return;
    chain_.push_back(tidy(f.derivative()));
    while (true) {
        Poly r = chain_[chain_.size() - 2] % chain_.back();
        if (r.is_zero()) break;
        chain_.push_back(tidy(-r));
    }
}

size_t SturmSequence::variations_at(const Rational& t) const {
    size_t v = 0;
    int last = 0;
    for (const auto& p : chain_) {
        int s = sign(p.eval(t));
        if (s == 0) continue;
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}

size_t SturmSequence::variations_at_infinity(bool positive) const {
    size_t v = 0;
    int last = 0;
    for (const auto& p : chain_) {
        int s = sign(p.leading());
        if (!positive && p.degree() % 2 == 1) s = -s;
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}

size_t SturmSequence::count(const std::optional<Rational>& a, const std::optional<Rational>& b) const {
    if (a && b && *b <= *a) return 0;
    size_t va = a ? variations_at(*a) : variations_at_infinity(false);
    size_t vb = b ? variations_at(*b) : variations_at_infinity(true);
    return va >= vb ? va - vb : 0;
}

size_t sturm_count(const Poly& f, const std::optional<Rational>& a, const std::optional<Rational>& b) {
    return SturmSequence(f).count(a, b);
}

Rational root_bound(const Poly& f) {
    if (f.degree() < 1) return 1;
    // Cauchy: |z| < 1 + max |a_i / a_n|.
    Rational m(0);
    for (int k = 0; k < f.degree(); ++k) m = std::max(m, abs(Rational(f.coeff(static_cast<size_t>(k)) / f.leading())));
    Rational bound = 1 + m;
    Rational p(1);
    while (p <= bound) p *= 2;
    return p;
}

// --- Boxes -----------------------------------------------------------------

bool RootBox::contains(const RootBox& inner) const {
    return re_lo <= inner.re_lo && inner.re_hi <= re_hi && im_lo <= inner.im_lo && inner.im_hi <= im_hi;
}

bool RootBox::intersects(const RootBox& o) const {
    return !(re_hi < o.re_lo || o.re_hi < re_lo || im_hi < o.im_lo || o.im_hi < im_lo);
}

Rational RootBox::side() const { return std::max(re_hi - re_lo, im_hi - im_lo); }

size_t RootIsolation::real_count() const {
    return static_cast<size_t>(std::count_if(boxes.begin(), boxes.end(), [](const RootBox& b) { return b.is_real; }));
}

namespace {

// --- Real roots: nested bisection of (-B, B] --------------------------------

struct RealChain {
    // Interval at each depth, starting from the isolating depth.
    std::vector<std::pair<Rational, Rational>> levels;
    size_t base_depth = 0;
};

void isolate_real(const SturmSequence& s, const Rational& lo, const Rational& hi, size_t depth,
                  std::vector<RealChain>& out) {
    size_t c = s.count(lo, hi);
    if (c == 0) return;
    if (c == 1) {
        RealChain chain;
        chain.levels.emplace_back(lo, hi);
        chain.base_depth = depth;
        out.push_back(std::move(chain));
        return;
    }
    Rational mid = (lo + hi) / 2;
    isolate_real(s, lo, mid, depth + 1, out);
    isolate_real(s, mid, hi, depth + 1, out);
}

const std::pair<Rational, Rational>& real_at(const SturmSequence& s, RealChain& chain, size_t depth) {
    if (depth < chain.base_depth) depth = chain.base_depth;
    while (chain.base_depth + chain.levels.size() <= depth) {
        const auto& [lo, hi] = chain.levels.back();
        Rational mid = (lo + hi) / 2;
        if (s.count(lo, mid) == 1)
            chain.levels.emplace_back(lo, mid);
        else
            chain.levels.emplace_back(mid, hi);
    }
    return chain.levels[depth - chain.base_depth];
}

// --- Complex roots: Aberth iteration + Weierstrass inclusion disks ----------

std::vector<std::complex<double>> aberth_double(const Poly& f) {
    const int n = f.degree();
    std::vector<std::complex<double>> c(static_cast<size_t>(n + 1));
    for (int k = 0; k <= n; ++k) c[static_cast<size_t>(k)] = f.coeff(static_cast<size_t>(k)).get_d() / f.leading().get_d();
    double radius = 0;
    for (int k = 1; k <= n; ++k)
        radius = std::max(radius, std::pow(std::abs(c[static_cast<size_t>(n - k)]), 1.0 / k));
    radius = std::max(2 * radius, 1e-3);
    std::vector<std::complex<double>> z(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) z[static_cast<size_t>(k)] = std::polar(radius, 0.4 + 2 * M_PI * k / n);
    for (int iter = 0; iter < 500; ++iter) {
        double worst = 0;
        for (size_t i = 0; i < z.size(); ++i) {
            std::complex<double> p = 0, dp = 0;
            for (int k = n; k >= 0; --k) {
                dp = dp * z[i] + p;
                p = p * z[i] + c[static_cast<size_t>(k)];
            }
            if (p == 0.0) continue;
            std::complex<double> ratio = p / dp;
            std::complex<double> s = 0;
            for (size_t j = 0; j < z.size(); ++j)
                if (j != i) s += 1.0 / (z[i] - z[j]);
            std::complex<double> w = ratio / (1.0 - ratio * s);
            if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) continue;
            z[i] -= w;
            worst = std::max(worst, std::abs(w) / std::max(1.0, std::abs(z[i])));
        }
        if (worst < 1e-14) break;
    }
    return z;
}

struct Level {
    unsigned long bits = 0;
    std::vector<QComplex> z;
    std::vector<Rational> radius;
    bool certified = false;
};

QComplex from_double(std::complex<double> w) {
    Rational re(std::isfinite(w.real()) ? w.real() : 0.0), im(std::isfinite(w.imag()) ? w.imag() : 0.0);
    return {re, im};
}

// Aberth steps carried out in exact arithmetic with rounding to 2^-bits.
void aberth_refine(const Poly& g, std::vector<QComplex>& z, unsigned long bits, int max_iter) {
    const Poly dg = g.derivative();
    const Rational stop = pow2(-2 * static_cast<long>(bits) + 8);
    for (int iter = 0; iter < max_iter; ++iter) {
        Rational worst(0);
        for (size_t i = 0; i < z.size(); ++i) {
            QComplex p = eval(g, z[i]);
            if (p.is_zero()) continue;
            QComplex dp = eval(dg, z[i]);
            QComplex s;
            bool clash = false;
            for (size_t j = 0; j < z.size(); ++j) {
                if (j == i) continue;
                QComplex d = z[i] - z[j];
                if (d.is_zero()) {
                    clash = true;
                    break;
                }
                s += QComplex(1) / d;
            }
            QComplex w;
            if (clash || dp.is_zero()) {
                // Nudge coincident iterates apart deterministically.
                w = QComplex(pow2(-static_cast<long>(bits) / 2), pow2(-static_cast<long>(bits) / 3));
            } else {
                QComplex ratio = p / dp;
                QComplex denom = QComplex(1) - ratio * s;
                w = denom.is_zero() ? ratio : ratio / denom;
            }
            w = round_dyadic(w, bits);
            z[i] = round_dyadic(z[i] - w, bits);
            worst = std::max(worst, w.norm2());
        }
        if (worst <= stop) break;
    }
}

// Weierstrass corrections W_i = g(z_i) / prod_{j != i}(z_i - z_j) for monic g:
// the disks |z - z_i| <= n|W_i| cover all roots and every connected
// component of k disks holds exactly k roots (Braess-Hadeler).
bool certify(const Poly& g, Level& lvl) {
    const size_t n = lvl.z.size();
    lvl.radius.assign(n, Rational(0));
    for (size_t i = 0; i < n; ++i) {
        QComplex denom(1);
        for (size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            QComplex d = lvl.z[i] - lvl.z[j];
            if (d.is_zero()) return false;
            denom = denom * d;
        }
        QComplex w = eval(g, lvl.z[i]) / denom;
        Rational r2 = w.norm2() * static_cast<long>(n * n);
        lvl.radius[i] = r2 == 0 ? Rational(0) : sqrt_upper(r2, lvl.bits + 16);
    }
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            Rational sum = lvl.radius[i] + lvl.radius[j];
            if ((lvl.z[i] - lvl.z[j]).norm2() <= sum * sum) return false;
        }
    return true;
}

class ComplexIsolator {
public:
    ComplexIsolator(const Poly& g, size_t real_roots) : g_(g), real_roots_(real_roots) {}

    // Non-real certified disks in the upper half plane at a level.
    std::vector<size_t> upper_indices(const Level& lvl) const {
        std::vector<size_t> up;
        for (size_t i = 0; i < lvl.z.size(); ++i)
            if (lvl.z[i].im > 0 && lvl.z[i].im > lvl.radius[i]) up.push_back(i);
        return up;
    }

    bool consistent(const Level& lvl) const {
        size_t up = 0, down = 0;
        for (size_t i = 0; i < lvl.z.size(); ++i) {
            if (abs(lvl.z[i].im) <= lvl.radius[i]) continue;
            (lvl.z[i].im > 0 ? up : down)++;
        }
        size_t n = lvl.z.size();
        return up == down && 2 * up + real_roots_ == n;
    }

    const Level& level(size_t j) {
        while (levels_.size() <= j) compute_next();
        return levels_[j];
    }

private:
    void compute_next() {
        Level lvl;
        std::vector<QComplex> start;
        unsigned long bits;
        if (levels_.empty()) {
            bits = 64;
            for (auto w : aberth_double(g_)) start.push_back(round_dyadic(from_double(w), bits));
        } else {
            bits = levels_.back().bits * 2;
            start = levels_.back().z;
        }
        // Keep iterating at this precision until the inclusion test passes.
        for (int attempt = 0; attempt < 40; ++attempt) {
            aberth_refine(g_, start, bits, attempt == 0 ? 60 : 20);
            lvl.bits = bits;
            lvl.z = start;
            if (certify(g_, lvl) && consistent(lvl)) {
                lvl.certified = true;
                break;
            }
            if (attempt % 4 == 3) bits *= 2;
        }
        if (!lvl.certified) {
            throw Error(ErrorKind::IllConditioned, "root inclusion could not be certified for " + g_.to_string());
        }
        levels_.push_back(std::move(lvl));
    }

    Poly g_;
    size_t real_roots_;
    std::vector<Level> levels_;
};

// Square box [re_lo, re_lo + side] x [im_lo, im_lo + side].
struct SquareBox {
    Rational re_lo, im_lo, side;
};

struct UpperChain {
    std::vector<SquareBox> boxes;  // depth 0, 1, ...
    size_t level_hint = 0;
};

class UpperRefiner {
public:
    // The starting squares must each meet a single inclusion disk, so pick
    // the first level where that holds.
    explicit UpperRefiner(ComplexIsolator& iso) : iso_(iso) {
        for (size_t j = 0;; ++j) {
            const Level& base = iso.level(j);
            std::vector<SquareBox> start;
            bool clean = true;
            for (size_t i : iso.upper_indices(base)) {
                Rational h = pow2(-static_cast<long>(base.bits));
                while (h < base.radius[i]) h *= 2;
                SquareBox b{base.z[i].re - h, base.z[i].im - h, 2 * h};
                for (size_t k = 0; k < base.z.size() && clean; ++k)
                    if (k != i && meets(b, base.z[k], base.radius[k])) clean = false;
                start.push_back(b);
            }
            if (!clean) continue;
            for (auto& b : start) {
                UpperChain c;
                c.boxes.push_back(b);
                c.level_hint = j;
                chains_.push_back(std::move(c));
            }
            return;
        }
    }

    static bool meets(const SquareBox& b, const QComplex& z, const Rational& r) {
        return !(z.re + r < b.re_lo || z.re - r > b.re_lo + b.side || z.im + r < b.im_lo || z.im - r > b.im_lo + b.side);
    }

    size_t size() const { return chains_.size(); }

    const SquareBox& at(size_t u, size_t depth) {
        UpperChain& c = chains_[u];
        while (c.boxes.size() <= depth) step(c);
        return c.boxes[depth];
    }

    // Depth at which chain u has side <= width.
    size_t depth_for(size_t u, const Rational& width) const {
        Rational s = chains_[u].boxes.front().side;
        size_t d = 0;
        while (s > width) {
            s /= 2;
            ++d;
        }
        return d;
    }

private:
    void step(UpperChain& c) {
        const SquareBox cur = c.boxes.back();
        const Rational limit = cur.side / 8;
        for (size_t j = c.level_hint;; ++j) {
            const Level& lvl = iso_.level(j);
            // The disk holding our root is the unique one meeting the box.
            std::optional<size_t> hit;
            bool ambiguous = false;
            for (size_t i = 0; i < lvl.z.size(); ++i) {
                const Rational& r = lvl.radius[i];
                if (!meets(cur, lvl.z[i], r)) continue;
                if (hit) ambiguous = true;
                hit = i;
            }
            if (!hit) throw Error(ErrorKind::IllConditioned, "root escaped its isolating box");
            if (ambiguous || lvl.radius[*hit] > limit) continue;
            c.level_hint = j;
            const QComplex& z = lvl.z[*hit];
            const Rational& r = lvl.radius[*hit];
            Rational lo_re = std::max(cur.re_lo, Rational(z.re - r));
            Rational hi_re = std::min(Rational(cur.re_lo + cur.side), Rational(z.re + r));
            Rational lo_im = std::max(cur.im_lo, Rational(z.im - r));
            Rational hi_im = std::min(Rational(cur.im_lo + cur.side), Rational(z.im + r));
            const Rational half = cur.side / 2;
            const Rational offsets[3] = {Rational(0), cur.side / 4, half};
            for (const auto& oa : offsets)
                for (const auto& ob : offsets) {
                    Rational re0 = cur.re_lo + oa, im0 = cur.im_lo + ob;
                    if (re0 <= lo_re && hi_re <= re0 + half && im0 <= lo_im && hi_im <= im0 + half) {
                        c.boxes.push_back({re0, im0, half});
                        return;
                    }
                }
            throw Error(ErrorKind::IllConditioned, "no candidate sub-box contains the inclusion disk");
        }
    }

    ComplexIsolator& iso_;
    std::vector<UpperChain> chains_;
};

RootBox to_box(const SquareBox& s) {
    return {s.re_lo, s.re_lo + s.side, s.im_lo, s.im_lo + s.side, false};
}

RootBox mirror(const RootBox& b) { return {b.re_lo, b.re_hi, -b.im_hi, -b.im_lo, false}; }

struct Ordered {
    Interval re;
    Rational im_key;
    size_t id;
};

// Cluster roots whose real-part enclosures overlap, order clusters left to
// right and members by imaginary part.
std::vector<size_t> canonical_order(std::vector<Ordered> items) {
    std::sort(items.begin(), items.end(), [](const Ordered& a, const Ordered& b) {
        if (a.re.lo != b.re.lo) return a.re.lo < b.re.lo;
        return a.id < b.id;
    });
    std::vector<std::vector<Ordered>> clusters;
    Rational reach;
    for (auto& it : items) {
        if (clusters.empty() || it.re.lo > reach) {
            clusters.emplace_back();
            reach = it.re.hi;
        } else {
            reach = std::max(reach, it.re.hi);
        }
        clusters.back().push_back(it);
    }
    std::vector<size_t> order;
    for (auto& cl : clusters) {
        std::sort(cl.begin(), cl.end(), [](const Ordered& a, const Ordered& b) {
            if (a.im_key != b.im_key) return a.im_key < b.im_key;
            return a.id < b.id;
        });
        for (auto& it : cl) order.push_back(it.id);
    }
    return order;
}

}  // namespace

RootIsolation isolate_roots(const Poly& f, const Rational& width) {
    if (f.degree() < 1) throw Error(ErrorKind::InvalidInput, "root isolation needs degree >= 1");
    if (width <= 0) throw Error(ErrorKind::InvalidInput, "box width must be positive");
    const Poly g = f.monic();
    const SturmSequence sturm(g);
    const size_t n = static_cast<size_t>(g.degree());
    const size_t n_real = sturm.count_all();
    const Rational bound = root_bound(g);

    std::vector<RealChain> reals;
    isolate_real(sturm, -bound, bound, 0, reals);

    std::optional<ComplexIsolator> iso;
    std::optional<UpperRefiner> upper;
    if (n_real < n) {
        iso.emplace(g, n_real);
        upper.emplace(*iso);
        if (2 * upper->size() + n_real != n) throw Error(ErrorKind::IllConditioned, "root count mismatch");
    }
    const size_t n_up = upper ? upper->size() : 0;

    // Minimal common extra depth making all closed boxes pairwise disjoint.
    auto real_depth = [&](size_t i, const Rational& w, size_t extra) {
        size_t d = 0;
        Rational len = 2 * bound;
        while (len > w) {
            len /= 2;
            ++d;
        }
        return std::max(d, reals[i].base_depth) + extra;
    };
    auto real_box = [&](size_t i, size_t depth) {
        const auto& [lo, hi] = real_at(sturm, reals[i], depth);
        return RootBox{lo, hi, 0, 0, true};
    };

    size_t extra_r = 0;
    while (true) {
        bool ok = true;
        for (size_t i = 0; i + 1 < reals.size() && ok; ++i)
            if (real_box(i, real_depth(i, width, extra_r)).re_hi >= real_box(i + 1, real_depth(i + 1, width, extra_r)).re_lo)
                ok = false;
        if (ok) break;
        ++extra_r;
    }

    size_t extra_c = 0;
    while (n_up > 0) {
        bool ok = true;
        std::vector<RootBox> ub;
        for (size_t u = 0; u < n_up; ++u) {
            ub.push_back(to_box(upper->at(u, upper->depth_for(u, width) + extra_c)));
            if (ub.back().im_lo <= 0) ok = false;
        }
        for (size_t a = 0; a < n_up && ok; ++a)
            for (size_t b = a + 1; b < n_up && ok; ++b)
                if (ub[a].intersects(ub[b])) ok = false;
        if (ok) break;
        ++extra_c;
    }

    // Width-independent ordering data: refine until real parts separate or
    // the enclosures are below 2^-100.
    const Rational order_cap = pow2(-100);
    std::vector<Ordered> items;
    {
        size_t extra = 0;
        while (true) {
            items.clear();
            for (size_t i = 0; i < reals.size(); ++i) {
                RootBox b = real_box(i, real_depth(i, 1, extra));
                items.push_back({{b.re_lo, b.re_hi}, 0, i});
            }
            for (size_t u = 0; u < n_up; ++u) {
                RootBox b = to_box(upper->at(u, upper->depth_for(u, 1) + extra));
                items.push_back({{b.re_lo, b.re_hi}, b.center().im, reals.size() + u});
                items.push_back({{b.re_lo, b.re_hi}, -b.center().im, reals.size() + n_up + u});
            }
            bool separated = true;
            bool small = true;
            for (size_t a = 0; a < items.size(); ++a) {
                if (items[a].re.width() > order_cap) small = false;
                for (size_t b = a + 1; b < items.size(); ++b) {
                    bool conj_pair = items[a].id >= reals.size() && items[b].id >= reals.size() &&
                                     (items[a].id - reals.size()) % n_up == (items[b].id - reals.size()) % n_up;
                    if (!conj_pair && items[a].re.intersects(items[b].re)) separated = false;
                }
            }
            if (separated || small) break;
            ++extra;
        }
    }
    std::vector<size_t> order = canonical_order(items);

    std::vector<RootBox> raw(n);
    std::vector<size_t> raw_conj(n);
    for (size_t i = 0; i < reals.size(); ++i) {
        raw[i] = real_box(i, real_depth(i, width, extra_r));
        raw_conj[i] = i;
    }
    for (size_t u = 0; u < n_up; ++u) {
        RootBox b = to_box(upper->at(u, upper->depth_for(u, width) + extra_c));
        raw[reals.size() + u] = b;
        raw[reals.size() + n_up + u] = mirror(b);
        raw_conj[reals.size() + u] = reals.size() + n_up + u;
        raw_conj[reals.size() + n_up + u] = reals.size() + u;
    }

    std::vector<size_t> position(n);
    for (size_t k = 0; k < n; ++k) position[order[k]] = k;
    RootIsolation out;
    out.boxes.resize(n);
    out.conjugate.resize(n);
    for (size_t id = 0; id < n; ++id) {
        out.boxes[position[id]] = raw[id];
        out.conjugate[position[id]] = position[raw_conj[id]];
    }
    return out;
}

std::vector<QComplex> root_approximations(const Poly& f, unsigned long digits) {
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
    RootIsolation iso = isolate_roots(f, Rational(Integer(1), scale));
    std::vector<QComplex> out;
    out.reserve(iso.boxes.size());
    for (const auto& b : iso.boxes) out.push_back(b.center());
    return out;
}

int sign_at_real_root(const Poly& q, const Poly& m, Rational lo, Rational hi) {
    if (q.is_zero()) return 0;
    if (q.degree() == 0) return sign(q.leading());
    const SturmSequence sm(m);
    Poly common = gcd(q, m);
    if (common.degree() > 0 && SturmSequence(common).count(lo, hi) > 0) return 0;
    const SturmSequence sq(squarefree_part(q));
    while (sq.count(lo, hi) > 0) {
        Rational mid = (lo + hi) / 2;
        if (sm.count(lo, mid) == 1)
            hi = mid;
        else
            lo = mid;
    }
    return sign(q.eval(hi));
}

}  // namespace weil
