#include "optf/theory.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace optf {

namespace {

Element elem_from_matrix(BackendKind kind, const AlgebraPtr &a, const Mat &mr, const CMat &mc) {
    return kind == BackendKind::RealQT ? element_from_real_matrix(a, mr)
                                       : element_from_complex_matrix(a, mc);
}

bool preserves_deterministic_effect(const LinearMap &map, double tol) {
    const auto &gd = map.domain->gram_diag();
    const auto &gc = map.codomain->gram_diag();
    std::vector<double> ud = map.domain->unit_coords(), uc = map.codomain->unit_coords();
    for (int j = 0; j < map.m.cols; ++j) {
        double s = 0;
        for (int i = 0; i < map.m.rows; ++i) s += map.m(i, j) * gc[i] * uc[i];
        if (std::abs(s - gd[j] * ud[j]) > tol) return false;
    }
    return true;
}

bool structural_positivity(BackendKind kind, int level_in, int level_out, const LinearMap &map,
                           double tol);

bool channel_conditions(BackendKind kind, int level_in, int level_out, const LinearMap &map,
                        double tol) {
    return preserves_deterministic_effect(map, tol) &&
           structural_positivity(kind, level_in, level_out, map, tol);
}

Element choi_of(BackendKind kind, int level_in, int level_out, const LinearMap &map) {
    if (kind != BackendKind::ComplexQT)
        throw std::domain_error("choi_element: defined for the complex backend only");
    int m = level_in, n = level_out;
    const auto &ain = map.domain;
    auto comp = system_algebra(kind, m * n);
    CMat c(m * n, m * n);
    const cplx iu(0, 1);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            CMat h1(m, m), h2(m, m);
            h1(i, j) += 0.5;
            h1(j, i) += 0.5;
            h2(j, i) += 0.5 * iu;
            h2(i, j) -= 0.5 * iu;
            CMat te = complex_matrix(apply(map, element_from_complex_matrix(ain, h1)));
            if (i != j) {
                CMat t2 = complex_matrix(apply(map, element_from_complex_matrix(ain, h2)));
                te = te + iu * t2;
            }
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) c(i * n + k, j * n + l) += te(k, l) / double(m);
        }
    return element_from_complex_matrix(comp, c);
}

bool structural_positivity(BackendKind kind, int level_in, int level_out, const LinearMap &map,
                           double tol) {
    switch (kind) {
        case BackendKind::Classical: {
            for (int i = 0; i < map.m.rows; ++i)
                for (int j = 0; j < map.m.cols; ++j)
                    if (map.m(i, j) < -tol) return false;
            return true;
        }
        case BackendKind::ComplexQT: {
            Element choi = choi_of(kind, level_in, level_out, map);
            ConeContext ctx{choi.alg};
            ctx.member_tol = tol;
            return cone_member(ctx, choi);
        }
        case BackendKind::RealQT:
            return true;
    }
    return true;
}

bool reversibility(BackendKind kind, int level_in, int level_out, const LinearMap &map, double tol) {
    if (!channel_conditions(kind, level_in, level_out, map, tol)) return false;
    if (map.m.rows != map.m.cols) return false;
    auto inv = mat_inverse(map.m);
    if (!inv) return false;
    LinearMap back{map.codomain, map.domain, *inv};
    return channel_conditions(kind, level_out, level_in, back, std::max(tol, 1e-8));
}

}  // namespace

std::string backend_name(BackendKind kind) {
    switch (kind) {
        case BackendKind::Classical: return "classical";
        case BackendKind::RealQT: return "real";
        case BackendKind::ComplexQT: return "complex";
    }
    return "?";
}

std::optional<BackendKind> backend_from_name(std::string_view name) {
    if (name == "classical") return BackendKind::Classical;
    if (name == "real") return BackendKind::RealQT;
    if (name == "complex") return BackendKind::ComplexQT;
    return std::nullopt;
}

AlgebraPtr system_algebra(BackendKind kind, int level) {
    if (level < 1) throw std::invalid_argument("system_algebra: level must be >= 1");
    switch (kind) {
        case BackendKind::Classical: {
            std::vector<AlgebraPtr> parts(level, Algebra::complex_herm(1));
            return Algebra::direct_sum(parts);
        }
        case BackendKind::RealQT: return Algebra::real_sym(level);
        case BackendKind::ComplexQT: return Algebra::complex_herm(level);
    }
    throw std::invalid_argument("system_algebra: unknown backend");
}

SystemInfo system_info(BackendKind kind, int level) {
    auto a = system_algebra(kind, level);
    return {a->dim(), a->rank(), a->rank()};
}

CompositeSystem compose_systems(BackendKind kind, int level_a, int level_b) {
    auto aa = system_algebra(kind, level_a);
    auto ab = system_algebra(kind, level_b);
    auto comp = system_algebra(kind, level_a * level_b);
    int da = aa->dim(), db = ab->dim();
    Mat embed(comp->dim(), da * db);

    if (kind == BackendKind::Classical) {
        for (int c = 0; c < da * db; ++c) embed(c, c) = 1.0;
        return {comp, level_a * level_b, std::move(embed)};
    }

    auto basis = [](const AlgebraPtr &alg) {
        std::vector<Element> out;
        for (int k = 0; k < alg->dim(); ++k) {
            std::vector<double> c(alg->dim(), 0.0);
            c[k] = 1;
            out.push_back({alg, std::move(c)});
        }
        return out;
    };
    auto ba = basis(aa), bb = basis(ab);

    if (kind == BackendKind::RealQT) {
        std::vector<Mat> ma, mb;
        for (auto &e : ba) ma.push_back(real_matrix(e));
        for (auto &e : bb) mb.push_back(real_matrix(e));
        for (int i = 0; i < da; ++i)
            for (int j = 0; j < db; ++j) {
                Element p = element_from_real_matrix(comp, kron(ma[i], mb[j]));
                for (int r = 0; r < comp->dim(); ++r) embed(r, i * db + j) = p.coords[r];
            }
    } else {
        std::vector<CMat> ma, mb;
        for (auto &e : ba) ma.push_back(complex_matrix(e));
        for (auto &e : bb) mb.push_back(complex_matrix(e));
        for (int i = 0; i < da; ++i)
            for (int j = 0; j < db; ++j) {
                Element p = element_from_complex_matrix(comp, kron(ma[i], mb[j]));
                for (int r = 0; r < comp->dim(); ++r) embed(r, i * db + j) = p.coords[r];
            }
    }
    return {comp, level_a * level_b, std::move(embed)};
}

Element product_state(BackendKind kind, const Element &a, const Element &b) {
    auto cs = compose_systems(kind, a.alg->rank(), b.alg->rank());
    std::vector<double> out(cs.algebra->dim(), 0.0);
    int db = (int)b.coords.size();
    for (int r = 0; r < cs.embed.rows; ++r) {
        double s = 0;
        for (int i = 0; i < (int)a.coords.size(); ++i)
            for (int j = 0; j < db; ++j) s += cs.embed(r, i * db + j) * a.coords[i] * b.coords[j];
        out[r] = s;
    }
    return {cs.algebra, std::move(out)};
}

CheckReport dimension_identity_check(BackendKind kind, int level_a, int level_b) {
    CheckReport r;
    r.check = "dimension_identity";
    r.backend = backend_name(kind);
    r.levels = {level_a, level_b};
    SystemInfo a = system_info(kind, level_a), b = system_info(kind, level_b);
    SystemInfo ab = system_info(kind, level_a * level_b);
    r.tolerances["d_a"] = a.dim;
    r.tolerances["d_b"] = b.dim;
    r.tolerances["d_ab"] = ab.dim;
    r.tolerances["n_a"] = a.info_dim;
    r.tolerances["n_b"] = b.info_dim;
    r.tolerances["n_ab"] = ab.info_dim;
    r.tolerances["deficit"] = ab.dim - a.dim * b.dim;
    r.pass = (ab.dim == a.dim * b.dim) && (ab.info_dim == a.info_dim * b.info_dim);
    if (!r.pass)
        r.witnesses.push_back({"dimension_counts", system_algebra(kind, level_a * level_b)->describe(),
                               {double(a.dim), double(b.dim), double(ab.dim)}});
    return r;
}

std::optional<TomographyWitness> product_tomography_witness(BackendKind kind, int level_a,
                                                            int level_b) {
    auto cs = compose_systems(kind, level_a, level_b);
    if (col_rank(cs.embed) == cs.algebra->dim()) return std::nullopt;

    // real backend with both levels >= 2: states (I +/- Y(x)Y)/(mn) agree on
    // every product effect because symmetric-against-antisymmetric traces
    // vanish factorwise
    int m = level_a, n = level_b;
    Mat ya(m, m), yb(n, n);
    ya(0, 1) = -1;
    ya(1, 0) = 1;
    yb(0, 1) = -1;
    yb(1, 0) = 1;
    Mat k = kron(ya, yb);
    Mat base = Mat::identity(m * n);
    double scale = 1.0 / (m * n);
    Element plus = element_from_real_matrix(cs.algebra, scale * (base + k));
    Element minus = element_from_real_matrix(cs.algebra, scale * (base - k));

    Element diff = plus - minus;
    for (int c = 0; c < cs.embed.cols; ++c) {
        double pairing = 0;
        for (int i = 0; i < cs.embed.rows; ++i) pairing += cs.embed(i, c) * diff.coords[i];
        if (std::abs(pairing) > 1e-10)
            throw std::logic_error("product_tomography_witness: states are product-distinguishable");
    }
    return TomographyWitness{std::move(plus), std::move(minus)};
}

DistinguishableFamily informational_dimension(BackendKind kind, int level) {
    auto a = system_algebra(kind, level);
    DistinguishableFamily fam;
    for (int i = 0; i < level; ++i) {
        Element p = zero_element(a);
        if (kind == BackendKind::Classical) {
            p.coords[i] = 1.0;
        } else {
            Mat mr(level, level);
            CMat mc(level, level);
            mr(i, i) = 1.0;
            mc(i, i) = 1.0;
            p = elem_from_matrix(kind, a, mr, mc);
        }
        fam.effects.push_back(dagger(p));
        fam.states.push_back(std::move(p));
    }
    return fam;
}

Channel make_channel(BackendKind kind, int level_in, int level_out, Mat m) {
    LinearMap map{system_algebra(kind, level_in), system_algebra(kind, level_out), std::move(m)};
    if (map.m.rows != map.codomain->dim() || map.m.cols != map.domain->dim())
        throw std::invalid_argument("make_channel: matrix shape does not match the system pair");
    Channel ch{kind, level_in, level_out, std::move(map), false, false};
    ch.is_deterministic = preserves_deterministic_effect(ch.map, 1e-9);
    ch.is_reversible = reversibility(kind, level_in, level_out, ch.map, 1e-9);
    return ch;
}

Element apply_channel(const Channel &ch, const Element &x) { return apply(ch.map, x); }

bool is_channel(const Channel &ch, double tol) {
    return channel_conditions(ch.kind, ch.level_in, ch.level_out, ch.map, tol);
}

bool is_reversible_channel(const Channel &ch, double tol) {
    return reversibility(ch.kind, ch.level_in, ch.level_out, ch.map, tol);
}

Element choi_element(const Channel &ch) { return choi_of(ch.kind, ch.level_in, ch.level_out, ch.map); }

Channel discard_and_reprepare(BackendKind kind, int level_in, const Element &tau) {
    auto ain = system_algebra(kind, level_in);
    const auto &g = ain->gram_diag();
    std::vector<double> u = ain->unit_coords();
    Mat m((int)tau.coords.size(), ain->dim());
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) m(i, j) = tau.coords[i] * g[j] * u[j];
    return make_channel(kind, level_in, tau.alg->rank(), std::move(m));
}

bool is_effect(BackendKind kind, int level, const EffectFunctional &f, double tol) {
    auto a = system_algebra(kind, level);
    ConeContext ctx{a};
    ctx.member_tol = tol;
    return cone_member(ctx, f.riesz) && cone_member(ctx, unit_element(a) - f.riesz);
}

bool is_measurement(BackendKind kind, int level, const std::vector<EffectFunctional> &parts,
                    double tol) {
    if (parts.empty()) return false;
    auto a = system_algebra(kind, level);
    Element sum = zero_element(a);
    for (const auto &p : parts) {
        if (!is_effect(kind, level, p, tol)) return false;
        sum = sum + p.riesz;
    }
    Element gap = sum - unit_element(a);
    for (double c : gap.coords)
        if (std::abs(c) > tol) return false;
    return true;
}

Element random_density(BackendKind kind, int level, Rng &rng) {
    auto a = system_algebra(kind, level);
    if (kind == BackendKind::Classical) {
        std::vector<double> p(level);
        double tot = 0;
        for (auto &v : p) {
            double g = rng.gauss();
            v = g * g;
            tot += v;
        }
        for (auto &v : p) v /= tot;
        return {a, std::move(p)};
    }
    if (kind == BackendKind::RealQT) {
        Mat g = gauss_mat<double>(level, level, rng);
        Mat w = g * transpose(g);
        return element_from_real_matrix(a, (1.0 / trace(w)) * w);
    }
    CMat g = gauss_mat<cplx>(level, level, rng);
    CMat w = g * adjoint(g);
    return element_from_complex_matrix(a, (1.0 / trace(w).real()) * w);
}

Element random_internal_density(BackendKind kind, int level, Rng &rng) {
    auto a = system_algebra(kind, level);
    Element rho = random_density(kind, level, rng);
    return 0.8 * rho + (0.2 / level) * unit_element(a);
}

Element random_pure(BackendKind kind, int level, Rng &rng) {
    auto a = system_algebra(kind, level);
    if (kind == BackendKind::Classical) {
        Element p = zero_element(a);
        p.coords[rng.uniform_int(0, level - 1)] = 1.0;
        return p;
    }
    if (kind == BackendKind::RealQT) {
        Mat v = gauss_mat<double>(level, 1, rng);
        Mat p = v * transpose(v);
        return element_from_real_matrix(a, (1.0 / trace(p)) * p);
    }
    CMat v = gauss_mat<cplx>(level, 1, rng);
    CMat p = v * adjoint(v);
    return element_from_complex_matrix(a, (1.0 / trace(p).real()) * p);
}

namespace {

template <typename S>
Mat conjugation_matrix(const AlgebraPtr &a, const std::vector<DenseMat<S>> &kraus) {
    int d = a->dim();
    Mat m(d, d);
    for (int k = 0; k < d; ++k) {
        std::vector<double> c(d, 0.0);
        c[k] = 1;
        Element bk{a, std::move(c)};
        DenseMat<S> x;
        if constexpr (std::is_same_v<S, double>)
            x = real_matrix(bk);
        else
            x = complex_matrix(bk);
        DenseMat<S> out(x.rows, x.cols);
        for (const auto &kr : kraus) out = out + kr * x * adjoint(kr);
        Element img;
        if constexpr (std::is_same_v<S, double>)
            img = element_from_real_matrix(a, out);
        else
            img = element_from_complex_matrix(a, out);
        for (int i = 0; i < d; ++i) m(i, k) = img.coords[i];
    }
    return m;
}

}  // namespace

Channel random_channel(BackendKind kind, int level, Rng &rng, int kraus_terms) {
    auto a = system_algebra(kind, level);
    if (kind == BackendKind::Classical) {
        Mat m(level, level);
        for (int j = 0; j < level; ++j) {
            double tot = 0;
            for (int i = 0; i < level; ++i) {
                double g = rng.gauss();
                m(i, j) = g * g;
                tot += m(i, j);
            }
            for (int i = 0; i < level; ++i) m(i, j) /= tot;
        }
        return make_channel(kind, level, level, std::move(m));
    }
    if (kind == BackendKind::RealQT) {
        std::vector<Mat> kraus;
        Mat s(level, level);
        for (int k = 0; k < kraus_terms; ++k) {
            kraus.push_back(gauss_mat<double>(level, level, rng));
            s = s + transpose(kraus.back()) * kraus.back();
        }
        Mat fix = psd_inv_sqrt(s);
        for (auto &kr : kraus) kr = kr * fix;
        return make_channel(kind, level, level, conjugation_matrix<double>(a, kraus));
    }
    std::vector<CMat> kraus;
    CMat s(level, level);
    for (int k = 0; k < kraus_terms; ++k) {
        kraus.push_back(gauss_mat<cplx>(level, level, rng));
        s = s + adjoint(kraus.back()) * kraus.back();
    }
    CMat fix = psd_inv_sqrt(s);
    for (auto &kr : kraus) kr = kr * fix;
    return make_channel(kind, level, level, conjugation_matrix<cplx>(a, kraus));
}

Channel random_reversible(BackendKind kind, int level, Rng &rng) {
    auto a = system_algebra(kind, level);
    if (kind == BackendKind::Classical) {
        std::vector<int> perm(level);
        std::iota(perm.begin(), perm.end(), 0);
        for (int i = level - 1; i > 0; --i) std::swap(perm[i], perm[rng.uniform_int(0, i)]);
        Mat m(level, level);
        for (int j = 0; j < level; ++j) m(perm[j], j) = 1.0;
        return make_channel(kind, level, level, std::move(m));
    }
    if (kind == BackendKind::RealQT) {
        std::vector<Mat> kraus{random_unitary<double>(level, rng)};
        return make_channel(kind, level, level, conjugation_matrix<double>(a, kraus));
    }
    std::vector<CMat> kraus{random_unitary<cplx>(level, rng)};
    return make_channel(kind, level, level, conjugation_matrix<cplx>(a, kraus));
}

std::vector<EffectFunctional> random_effect_resolution(BackendKind kind, int level, int k, Rng &rng) {
    auto a = system_algebra(kind, level);
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::vector<Element> squares;
        Element total = zero_element(a);
        for (int i = 0; i < k; ++i) {
            Element g = gauss_element(a, rng);
            squares.push_back(jordan_product(g, g));
            total = total + squares.back();
        }
        auto sd = spectral_decompose(total);
        if (sd.eigenvalues.back() < 1e-8) continue;
        Element shrink = element_function(total, [](double v) { return 1.0 / std::sqrt(v); });
        std::vector<EffectFunctional> out;
        for (auto &s : squares) out.push_back({quadratic_rep(shrink, s)});
        return out;
    }
    throw std::runtime_error("random_effect_resolution: failed to draw a full-rank total");
}

}  // namespace optf
