#include "dgk/resolve.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "dgk/serialize.hpp"

namespace dgk {

namespace {

// ρ on P^i, from the generator images.
template <class F>
Matrix<F> rho_at(const SemiFreeBuilder<F>& b, const DGModule<F>& m, const std::vector<Vector<F>>& images, int i) {
  const auto& a = *b.algebra();
  Matrix<F> out(a.field, m.dim(i), b.dim(i));
  const auto& gens = b.generators();
  std::size_t col = 0;
  for (std::size_t g = 0; g < gens.size(); ++g) {
    const int j = i - gens[g].degree;
    for (std::size_t e = 0; e < a.dim(j); ++e, ++col)
      out.set_column(col, m.act(j, a.basis(j, e), gens[g].degree, images[g]));
  }
  return out;
}

// 0 for a cycle generator, otherwise one more than the deepest generator in
// its boundary.
template <class F>
int stage_of(const SemiFreeBuilder<F>& b, int degree, const Vector<F>& boundary) {
  const auto& a = *b.algebra();
  const auto& gens = b.generators();
  int stage = 0;
  bool any = false;
  for (std::size_t h = 0; h < gens.size(); ++h) {
    const int j = degree + 1 - gens[h].degree;
    const std::size_t off = b.offset(degree + 1, h);
    for (std::size_t e = 0; e < a.dim(j); ++e)
      if (!a.field.is_zero(boundary[off + e])) {
        stage = std::max(stage, gens[h].stage + 1);
        any = true;
      }
  }
  return any ? stage : 0;
}

template <class F>
bool extends_span(Matrix<F>& span, const Vector<F>& v) {
  const F& f = span.field();
  Matrix<F> candidate = vstack(span, Matrix<F>::from_rows(f, v.size(), {v}));
  if (rank(candidate) == span.rows()) return false;
  span = std::move(candidate);
  return true;
}

template <class F>
void check_cap(const SemiFreeBuilder<F>& b, int k, std::size_t cap) {
  if (b.count_in_degree(k) > cap)
    throw ResourceError("semi-free resolution exceeded the per-degree generator cap of " + std::to_string(cap) +
                        " in degree " + std::to_string(k));
}

}  // namespace

template <class F>
SemiFreeResolution<F> semifree_resolve(const DGModule<F>& m, int depth, const ResolveOptions& options) {
  if (depth < 1) throw StructuralError("resolution depth must be at least 1");
  const F& f = m.field();
  SemiFreeResolution<F> r{m, SemiFreeBuilder<F>(m.side, m.algebra), {}, {}, {}, depth, 0, 0, {}, {}};
  r.sup = cohomology_sup(m);
  r.anchor = options.anchor.value_or(r.sup.value_or(m.hi));
  r.floor = r.anchor - depth;
  std::optional<std::mt19937_64> rng;
  if (options.seed) rng.emplace(*options.seed);
  auto& b = r.builder;
  auto& images = r.images;

  if (r.sup)
    for (int k = *r.sup; k >= r.floor; --k) {
      // Kill the kernel of H^{k+1}(ρ) with generators whose boundaries are
      // the offending cocycles.
      if (k + 1 <= *r.sup) {
        const auto hm = cohomology(m, k + 1);
        const Matrix<F> z = kernel_basis(b.differential(k + 1));
        const Matrix<F> rho1 = rho_at(b, m, images, k + 1);
        Matrix<F> killers = kernel_basis(hm.class_map * rho1 * z.transpose()) * z;
        if (rng && killers.rows() > 0)
          for (int attempt = 0; attempt < 16; ++attempt) {
            auto mix = random_matrix(f, killers.rows(), killers.rows(), *rng);
            if (rank(mix) < killers.rows()) continue;  // a singular mix would lose part of the kernel
            killers = mix * killers;
            break;
          }
        Matrix<F> span = image_basis(b.differential(k));
        for (std::size_t row = 0; row < killers.rows(); ++row) {
          Vector<F> x = killers.row_vector(row);
          if (!extends_span(span, x)) continue;
          auto y = solve(m.d(k), dgk::apply(rho1, x));
          if (!y) throw std::logic_error("resolution: a cocycle in ker H(ρ) has no boundary preimage");
          const int stage = stage_of(b, k, x);
          b.add(k, std::move(x), stage);
          images.push_back(std::move(*y));
          check_cap(b, k, options.generator_cap);
          span = image_basis(b.differential(k));  // x·A^0 is now a boundary too
        }
      }
      // Make H^k(ρ) onto with cycle generators.
      const auto hk = cohomology(m, k);
      if (hk.dim() == 0) continue;
      const Matrix<F> zk = kernel_basis(b.differential(k));
      Matrix<F> span = image_basis(hk.class_map * rho_at(b, m, images, k) * zk.transpose());
      std::vector<Vector<F>> candidates;
      if (rng)
        for (std::size_t t = 0; t < 4 * hk.dim(); ++t) candidates.push_back(random_vector(f, hk.dim(), *rng));
      candidates.push_back(Vector<F>(hk.dim(), f.one()));
      for (std::size_t c = 0; c < hk.dim(); ++c) candidates.push_back(unit_vector(f, hk.dim(), c));
      std::mt19937_64 fixed(0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(k));
      for (std::size_t t = 0; t < 2; ++t) candidates.push_back(random_vector(f, hk.dim(), fixed));
      // classes of v·A^0, so that a cyclic H^k is hit by a single generator
      auto orbit = [&](const Vector<F>& v) {
        const auto rep = hk.representative_of(v);
        std::vector<Vector<F>> rows;
        for (std::size_t e = 0; e < m.algebra->dim(0); ++e)
          rows.push_back(hk.class_of(m.act(0, m.algebra->basis(0, e), k, rep)));
        return Matrix<F>::from_rows(f, hk.dim(), rows);
      };
      while (span.rows() < hk.dim()) {
        std::size_t best = candidates.size(), best_rank = span.rows();
        for (std::size_t c = 0; c < candidates.size(); ++c) {
          const auto grown = rank(vstack(span, orbit(candidates[c])));
          if (grown > best_rank) best = c, best_rank = grown;
        }
        if (best == candidates.size()) throw std::logic_error("resolution: no candidate extends the image of H(ρ)");
        b.add(k, zero_vector(f, b.dim(k + 1)), 0);
        images.push_back(hk.representative_of(candidates[best]));
        check_cap(b, k, options.generator_cap);
        span = image_basis(hk.class_map * rho_at(b, m, images, k) * kernel_basis(b.differential(k)).transpose());
      }
    }

  r.p = b.module(r.anchor);
  r.rho = b.extend(r.p, m, images);
  r.evidence = verify_resolution(r);
  return r;
}

template <class F>
Evidence verify_resolution(const SemiFreeResolution<F>& r) {
  Evidence ev;
  const auto& p = r.p;
  const auto& m = r.target;
  auto bundle = [&] { return json{{"target", to_json(m)}, {"resolution", resolution_to_json(r)}}; };
  auto vp = validate_module(p);
  ev.record("P is a valid DG module", vp.ok(), vp.summary(), bundle);
  auto vr = validate_morphism(r.rho);
  ev.record("rho is a strict morphism", vr.ok(), vr.summary(), bundle);
  if (r.sup && *r.sup >= r.floor)
    ev.record("sup P = sup H(M)", !r.builder.empty() && p.hi == *r.sup,
              "sup H(M) = " + std::to_string(*r.sup) + ", P.hi = " + std::to_string(p.hi), bundle);
  else
    ev.record("no cohomology above the floor gives P = 0", r.builder.empty(), {}, bundle);

  bool iso = true, onto = true;
  std::string where;
  for (int i = r.floor; i <= std::max(m.hi, p.hi); ++i) {
    auto hp = cohomology(p, i), hm = cohomology(m, i);
    auto h = induced_on_cohomology(r.rho, hp, hm);
    if (i > r.floor && !is_bijective(h)) {
      iso = false;
      where += " H^" + std::to_string(i);
    }
    if (i == r.floor && !is_surjective(h)) onto = false;
  }
  ev.record("H(rho) bijective above the floor", iso, where, bundle);
  ev.record("H(rho) surjective at the floor", onto, "floor " + std::to_string(r.floor), bundle);

  bool ordered = true, staged = true;
  SemiFreeBuilder<F> replay(p.side, p.algebra);
  for (const auto& g : r.generators()) {
    if (!replay.empty() && g.degree > replay.generators().back().degree) ordered = false;
    if (stage_of(replay, g.degree, g.boundary) != g.stage) staged = false;
    replay.add(g.degree, g.boundary, g.stage);
  }
  ev.record("generators in nonincreasing degree", ordered, {}, bundle);
  ev.record("stage tags match boundaries", staged, {}, bundle);
  return ev;
}

template <class F>
json resolution_to_json(const SemiFreeResolution<F>& r) {
  const F& f = r.target.field();
  json gens = json::array();
  for (std::size_t g = 0; g < r.generators().size(); ++g) {
    const auto& gen = r.generators()[g];
    gens.push_back({{"degree", gen.degree},
                    {"stage", gen.stage},
                    {"boundary", vector_to_json(f, gen.boundary)},
                    {"image", vector_to_json(f, r.images[g])}});
  }
  json out = {{"type", "semifree_resolution"}, {"depth", r.depth}, {"anchor", r.anchor},
              {"floor", r.floor},            {"generators", gens}, {"module", to_json(r.p)}};
  out["sup_cohomology"] = r.sup ? json(*r.sup) : json(nullptr);
  return out;
}

// ---------------------------------------------------------------- derived θ

template <class F>
DerivedKunnethWitness<F> theta_der(const DGModule<F>& m, const DGModule<F>& n, const DerivedOptions& options) {
  if (m.side != Side::Right || n.side != Side::Left)
    throw StructuralError("theta_der needs a right module and a left module");
  const F& f = m.field();
  DerivedKunnethWitness<F> w;
  w.i0 = options.i0.value_or(m.hi);
  w.j0 = options.j0.value_or(n.hi);
  if (auto s = cohomology_sup(m); s && *s > w.i0)
    throw StructuralError("H(M) is nonzero in degree " + std::to_string(*s) + " > i0");
  if (auto s = cohomology_sup(n); s && *s > w.j0)
    throw StructuralError("H(N) is nonzero in degree " + std::to_string(*s) + " > j0");

  w.truncated = smart_truncate(n, w.j0);
  w.truncation = smart_truncation_inclusion(n, w.j0);
  const int depth = options.depth.value_or(w.truncated.width() + 2);
  ResolveOptions ro = options.resolve;
  ro.anchor = w.i0;
  w.resolution = semifree_resolve(m, depth, ro);
  w.plain = theta(w.resolution.p, w.truncated, w.i0, w.j0);

  w.left_cohomology = cohomology(m, w.i0, w.plain.abar);
  w.right_cohomology = cohomology(n, w.j0, w.plain.abar);
  w.source = tensor_over_ring(f, h0_module(w.left_cohomology), h0_module(w.right_cohomology));
  auto h_rho = induced_on_cohomology(w.resolution.rho, w.plain.left_cohomology, w.left_cohomology);
  auto h_incl = induced_on_cohomology(w.truncation, w.plain.right_cohomology, w.right_cohomology);
  w.transport = balanced_map(h_rho, h_incl, w.plain.source, w.source);

  auto& ev = w.evidence;
  ev.merge(w.resolution.evidence, "resolution");
  ev.merge(w.plain.evidence, "plain");
  auto bundle = [&] { return pair_bundle(m, n); };
  ev.record("dimension pre-check", w.source.dim() == w.plain.target.dim(),
            std::to_string(w.source.dim()) + " vs " + std::to_string(w.plain.target.dim()), bundle);
  auto inv = inverse(w.transport);
  ev.record("transport along H(rho) is bijective", inv.has_value(), {}, bundle);
  w.theta_der = inv ? w.plain.theta * *inv : Matrix<F>(f, w.plain.target.dim(), w.source.dim());
  ev.record("theta_der is bijective", is_bijective(w.theta_der), "rank " + std::to_string(rank(w.theta_der)), bundle);
  return w;
}

template <class F>
CohomologyModule<F> derived_tensor_top(const DGModule<F>& m, const DGModule<F>& n, const DerivedOptions& options) {
  return theta_der(m, n, options).plain.target;
}

template <class F>
Matrix<F> eta_top(const DerivedKunnethWitness<F>& w, const KunnethWitness<F>& plain_mn) {
  const int top = w.top_degree();
  return plain_mn.target.class_map *
         tensor_map(w.resolution.rho, w.truncation, w.plain.tensor, plain_mn.tensor, top) *
         w.plain.target.representative_map;
}

template <class F>
Evidence check_derived_square(const DGModule<F>& m, const DGModule<F>& n, const DerivedOptions& options) {
  auto w = theta_der(m, n, options);
  auto plain = theta(m, n, w.i0, w.j0);
  auto eta = eta_top(w, plain);
  Evidence ev;
  auto bundle = [&] { return pair_bundle(m, n); };
  ev.record("eta is bijective in the top degree", is_bijective(eta), {}, bundle);
  ev.record("H(eta) theta_der = theta", eta * w.theta_der == plain.theta,
            std::to_string(plain.theta.rows()) + "x" + std::to_string(plain.theta.cols()), bundle);
  return ev;
}

template <class F>
Evidence check_resolution_independence(const DGModule<F>& m, const DGModule<F>& n, std::uint64_t seed_a,
                                       std::uint64_t seed_b, const DerivedOptions& options) {
  DerivedOptions oa = options, ob = options;
  oa.resolve.seed = seed_a;
  ob.resolve.seed = seed_b;
  auto wa = theta_der(m, n, oa);
  auto wb = theta_der(m, n, ob);
  auto plain = theta(m, n, wa.i0, wa.j0);
  Evidence ev;
  auto bundle = [&] { return pair_bundle(m, n); };
  ev.record("seeded resolutions valid", wa.resolution.evidence.ok() && wb.resolution.evidence.ok(), {}, bundle);
  const bool same = eta_top(wa, plain) * wa.theta_der == eta_top(wb, plain) * wb.theta_der;
  ev.record("composites agree across resolutions", same,
            std::to_string(wa.resolution.generators().size()) + " and " +
                std::to_string(wb.resolution.generators().size()) + " generators",
            bundle);
  return ev;
}

template <class F>
Evidence check_depth_stabilization(const DGModule<F>& m, const DGModule<F>& n, const std::vector<int>& depths_in,
                                   const DerivedOptions& options) {
  const F& f = m.field();
  DerivedOptions base = options;
  base.resolve.seed.reset();
  std::vector<int> depths = depths_in;
  if (depths.empty()) {
    const int b = smart_truncate(n, options.j0.value_or(n.hi)).width();
    depths = {b + 2, b + 3, b + 4};
  }
  std::sort(depths.begin(), depths.end());
  Evidence ev;
  auto bundle = [&] { return pair_bundle(m, n); };
  std::vector<DerivedKunnethWitness<F>> ws;
  for (int d : depths) {
    DerivedOptions o = base;
    o.depth = d;
    ws.push_back(theta_der(m, n, o));
  }
  for (std::size_t k = 0; k + 1 < ws.size(); ++k) {
    const auto& w1 = ws[k];
    const auto& w2 = ws[k + 1];
    const std::string tag = "depth " + std::to_string(depths[k]) + "->" + std::to_string(depths[k + 1]);
    const auto& g1 = w1.resolution.generators();
    const auto& g2 = w2.resolution.generators();
    bool prefix = g1.size() <= g2.size();
    for (std::size_t g = 0; prefix && g < g1.size(); ++g)
      prefix = g1[g].degree == g2[g].degree && g1[g].stage == g2[g].stage &&
               Matrix<F>::column(f, g1[g].boundary) == Matrix<F>::column(f, g2[g].boundary) &&
               Matrix<F>::column(f, w1.resolution.images[g]) == Matrix<F>::column(f, w2.resolution.images[g]);
    ev.record(tag + ": shorter resolution is a prefix", prefix, {}, bundle);
    ev.record(tag + ": top cohomology dimension constant", w1.target().dim() == w2.target().dim(),
              std::to_string(w1.target().dim()) + " vs " + std::to_string(w2.target().dim()), bundle);
    if (!prefix) continue;

    const auto& p1 = w1.resolution.p;
    const auto& p2 = w2.resolution.p;
    auto incl = StrictMorphism<F>::zero(p1, p2);
    for (int i = p1.lo; i <= p1.hi; ++i)
      incl.maps[i - p1.lo].set_block(0, 0, Matrix<F>::identity(f, p1.dim(i)));
    bool compatible = validate_morphism(incl).ok();
    for (int i = p1.lo; i <= p1.hi && compatible; ++i)
      compatible = w2.resolution.rho.at(i) * incl.at(i) == w1.resolution.rho.at(i);
    ev.record(tag + ": inclusion is a strict morphism over M", compatible, {}, bundle);

    auto id = StrictMorphism<F>::identity(w1.truncated);
    const int top = w1.top_degree();
    auto h = w2.plain.target.class_map * tensor_map(incl, id, w1.plain.tensor, w2.plain.tensor, top) *
             w1.plain.target.representative_map;
    ev.record(tag + ": theta_der carried to theta_der", h * w1.theta_der == w2.theta_der, {}, bundle);
  }
  return ev;
}

template <class F>
ResolutionLift<F> lift_through_resolutions(const StrictMorphism<F>& f, const SemiFreeResolution<F>& r,
                                           const SemiFreeResolution<F>& r2) {
  const F& field = f.source.field();
  const auto& a = *r.p.algebra;
  const auto& b = r.builder;
  const auto& gens = b.generators();
  const auto& p = r.p;
  const auto& p2 = r2.p;
  const auto& m2 = r2.target;
  ResolutionLift<F> out;
  std::vector<Vector<F>> u(gens.size()), v(gens.size());
  bool ok = true;

  for (std::size_t g = 0; g < gens.size() && ok; ++g) {
    const int k = gens[g].degree;
    const auto& x = gens[g].boundary;
    Vector<F> fx = zero_vector(field, p2.dim(k + 1));
    Vector<F> hx = zero_vector(field, m2.dim(k));
    for (std::size_t h = 0; h < g; ++h) {
      const int j = k + 1 - gens[h].degree;
      if (a.dim(j) == 0) continue;
      const std::size_t off = b.offset(k + 1, h);
      for (std::size_t e = 0; e < a.dim(j); ++e) {
        const auto& c = x[off + e];
        if (field.is_zero(c)) continue;
        fx = add(field, fx, scaled(field, c, p2.act(j, a.basis(j, e), gens[h].degree, u[h])));
        hx = add(field, hx, scaled(field, c, m2.act(j, a.basis(j, e), gens[h].degree - 1, v[h])));
      }
    }
    // [d_{P'} 0; ρ' -d_{M'}] [u; v] = [f̃(dx); fρ(x) + h(dx)]
    const std::size_t nu = p2.dim(k), nv = m2.dim(k - 1);
    Matrix<F> sys(field, p2.dim(k + 1) + m2.dim(k), nu + nv);
    sys.set_block(0, 0, p2.d(k));
    sys.set_block(p2.dim(k + 1), 0, r2.rho.at(k));
    Matrix<F> dm = m2.d(k - 1);
    dm.scale(field.neg(field.one()));
    sys.set_block(p2.dim(k + 1), nu, dm);
    Vector<F> rhs = fx;
    auto lower = add(field, f.apply(k, r.images[g]), hx);
    rhs.insert(rhs.end(), lower.begin(), lower.end());
    auto sol = solve(sys, rhs);
    if (!sol) {
      ok = false;
      out.evidence.fail("lift exists", "generator " + std::to_string(g) + " in degree " + std::to_string(k) +
                                           ", stage " + std::to_string(gens[g].stage));
      break;
    }
    u[g].assign(sol->begin(), sol->begin() + static_cast<std::ptrdiff_t>(nu));
    v[g].assign(sol->begin() + static_cast<std::ptrdiff_t>(nu), sol->end());
  }
  if (!ok) {
    out.lift = StrictMorphism<F>::zero(p, p2);
    return out;
  }
  out.evidence.pass("lift exists", std::to_string(gens.size()) + " generators");
  out.lift = b.extend(p, p2, u);

  for (int i = p.lo; i <= p.hi; ++i) {
    Matrix<F> h(field, m2.dim(i - 1), p.dim(i));
    std::size_t col = 0;
    for (std::size_t g = 0; g < gens.size(); ++g) {
      const int j = i - gens[g].degree;
      for (std::size_t e = 0; e < a.dim(j); ++e, ++col)
        h.set_column(col, m2.act(j, a.basis(j, e), gens[g].degree - 1, v[g]));
    }
    out.homotopy.push_back(std::move(h));
  }
  auto hom = [&](int i) {
    if (i < p.lo || i > p.hi) return Matrix<F>(field, m2.dim(i - 1), p.dim(i));
    return out.homotopy[i - p.lo];
  };
  bool homotopic = true;
  for (int i = p.lo; i <= p.hi && homotopic; ++i)
    homotopic = r2.rho.at(i) * out.lift.at(i) - f.at(i) * r.rho.at(i) == m2.d(i - 1) * hom(i) + hom(i + 1) * p.d(i);
  out.evidence.record("lift is a strict morphism", validate_morphism(out.lift).ok(), {});
  out.evidence.record("rho' lift - f rho = dh + hd", homotopic, {});
  return out;
}

template <class F>
Evidence check_theta_der_functoriality(const StrictMorphism<F>& f, const StrictMorphism<F>& g,
                                       const DerivedOptions& options) {
  DerivedOptions o = options;
  o.i0 = options.i0.value_or(std::max(f.source.hi, f.target.hi));
  o.j0 = options.j0.value_or(std::max(g.source.hi, g.target.hi));
  if (!o.depth)
    o.depth = std::max(smart_truncate(g.source, *o.j0).width(), smart_truncate(g.target, *o.j0).width()) + 2;
  auto w = theta_der(f.source, g.source, o);
  auto w2 = theta_der(f.target, g.target, o);
  auto lift = lift_through_resolutions(f, w.resolution, w2.resolution);
  Evidence ev;
  ev.merge(lift.evidence, "lift");
  auto bundle = [&] {
    return json{{"left_morphism", to_json(f)}, {"right_morphism", to_json(g)}};
  };
  if (!lift.evidence.ok()) {
    ev.fail("theta_der naturality square", "no lift through the resolutions", bundle());
    return ev;
  }
  auto tg = smart_truncation_map(g, *o.j0);
  auto hf = induced_on_cohomology(f, w.left_cohomology, w2.left_cohomology);
  auto hg = induced_on_cohomology(g, w.right_cohomology, w2.right_cohomology);
  auto left = w2.theta_der * balanced_map(hf, hg, w.source, w2.source);
  auto right = w2.plain.target.class_map *
               tensor_map(lift.lift, tg, w.plain.tensor, w2.plain.tensor, w.top_degree()) *
               w.plain.target.representative_map * w.theta_der;
  ev.record("theta_der naturality square", left == right, {}, bundle);
  return ev;
}

#define DGK_INSTANTIATE(F)                                                                                          \
  template SemiFreeResolution<F> semifree_resolve<F>(const DGModule<F>&, int, const ResolveOptions&);               \
  template Evidence verify_resolution<F>(const SemiFreeResolution<F>&);                                             \
  template json resolution_to_json<F>(const SemiFreeResolution<F>&);                                                \
  template DerivedKunnethWitness<F> theta_der<F>(const DGModule<F>&, const DGModule<F>&, const DerivedOptions&);    \
  template CohomologyModule<F> derived_tensor_top<F>(const DGModule<F>&, const DGModule<F>&, const DerivedOptions&); \
  template Matrix<F> eta_top<F>(const DerivedKunnethWitness<F>&, const KunnethWitness<F>&);                         \
  template Evidence check_derived_square<F>(const DGModule<F>&, const DGModule<F>&, const DerivedOptions&);             \
  template Evidence check_resolution_independence<F>(const DGModule<F>&, const DGModule<F>&, std::uint64_t,         \
                                                     std::uint64_t, const DerivedOptions&);                         \
  template Evidence check_depth_stabilization<F>(const DGModule<F>&, const DGModule<F>&, const std::vector<int>&,   \
                                                 const DerivedOptions&);                                            \
  template ResolutionLift<F> lift_through_resolutions<F>(const StrictMorphism<F>&, const SemiFreeResolution<F>&,    \
                                                         const SemiFreeResolution<F>&);                             \
  template Evidence check_theta_der_functoriality<F>(const StrictMorphism<F>&, const StrictMorphism<F>&,            \
                                                     const DerivedOptions&);
DGK_FOR_EACH_FIELD(DGK_INSTANTIATE)
#undef DGK_INSTANTIATE

}  // namespace dgk
