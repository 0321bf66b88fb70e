#include "olt/strata.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <set>
#include <thread>

#include "olt/errors.hpp"
#include "olt/spinor.hpp"

namespace olt {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

template <class T, class F>
std::vector<T> parallel_map(std::size_t count, unsigned workers, F&& body) {
  std::vector<T> out(count);
  if (workers <= 1 || count <= 1) {
    for (std::size_t k = 0; k < count; ++k) out[k] = body(k);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex m;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < std::min<std::size_t>(workers, count); ++w)
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t k = next++;
        if (k >= count) return;
        try {
          out[k] = body(k);
        } catch (...) {
          std::lock_guard<std::mutex> lock(m);
          if (!error) error = std::current_exception();
          next = count;
        }
      }
    });
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return out;
}

std::uint64_t f2_word(const ProjPoint& p) {
  std::uint64_t w = 0;
  for (std::size_t k = 0; k < p.coords.size(); ++k) w |= std::uint64_t{p.coords[k] & 1u} << k;
  return w;
}

const int kPairs[10][2] = {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}};

int pair_index(int i, int j) {
  for (int k = 0; k < 10; ++k)
    if (kPairs[k][0] == i && kPairs[k][1] == j) return k;
  return -1;
}

// rank of the alternating form on F_2^5 with coefficient h_{ij} at bit pair_index(i, j)
int skew_rank(std::uint64_t h) {
  std::uint64_t rows[5] = {};
  for (int k = 0; k < 10; ++k)
    if (h >> k & 1) {
      rows[kPairs[k][0]] |= 1u << kPairs[k][1];
      rows[kPairs[k][1]] |= 1u << kPairs[k][0];
    }
  return static_cast<int>(rank_u64(rows));
}

BitVec unit(std::size_t n, std::size_t b) {
  BitVec v(n);
  v.set(b);
  return v;
}

BitVec form_from_exponents(const FormSpace& fs, std::initializer_list<std::vector<int>> terms) {
  BitVec f(fs.dimension());
  for (const auto& e : terms) {
    const int r = fs.raw_index(e);
    if (r < 0) throw IntegrityError("monomial outside the form space");
    f.flip(static_cast<std::size_t>(r));
  }
  return f;
}

std::vector<BitVec> pluecker_quadrics(const FormSpace& quad) {
  std::vector<BitVec> out;
  for (int a = 0; a < 5; ++a)
    for (int b = a + 1; b < 5; ++b)
      for (int c = b + 1; c < 5; ++c)
        for (int d = c + 1; d < 5; ++d) {
          BitVec f(quad.dimension());
          auto mono = [&](int p, int q) {
            std::vector<int> e(10, 0);
            e[static_cast<std::size_t>(p)] += 1;
            e[static_cast<std::size_t>(q)] += 1;
            f.flip(static_cast<std::size_t>(quad.raw_index(e)));
          };
          mono(pair_index(a, b), pair_index(c, d));
          mono(pair_index(a, c), pair_index(b, d));
          mono(pair_index(a, d), pair_index(b, c));
          out.push_back(std::move(f));
        }
  return out;
}

// The three cubics P(x_1, x_2) of the self-adjoint case, as x_0 y + P.
std::vector<BitVec> self_adjoint_cubics(const FormSpace& cubic) {
  const std::vector<int> x0y{1, 0, 0, 1}, a{0, 3, 0, 0}, b{0, 2, 1, 0}, c{0, 1, 2, 0}, d{0, 0, 3, 0};
  return {form_from_exponents(cubic, {x0y, b, c}), form_from_exponents(cubic, {x0y, a, b, c}),
          form_from_exponents(cubic, {x0y, a, c, d})};
}

}  // namespace

// ---- oracles and actions ------------------------------------------------------

EligibilityOracle eligibility_oracle_for(const StratumSpec& spec, const std::vector<ProjPoint>& points,
                                         const OgOracleOptions& og) {
  if (spec.condition == "no-three-projection" || spec.condition == "no-five-projection") {
    const bool three = spec.condition == "no-three-projection";
    const std::size_t a = three ? 3 : 2;  // coordinates of the first factor
    const std::size_t limit = three ? 3 : 5;
    auto proj = [&points, a](Point p, bool first) {
      const auto& c = points[p].coords;
      return first ? std::vector<Elem>(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(a))
                   : std::vector<Elem>(c.begin() + static_cast<std::ptrdiff_t>(a), c.end());
    };
    return [proj, three, limit](std::span<const Point> t) {
      for (bool first : {true, false}) {
        if (!first && !three) break;
        const auto last = proj(t.back(), first);
        std::size_t same = 1;
        for (std::size_t k = 0; k + 1 < t.size(); ++k) same += proj(t[k], first) == last;
        if (same >= limit) return false;
      }
      return true;
    };
  }
  if (spec.condition == "og-forbidden") {
    auto oracle = std::make_shared<OgOracle>(og);
    return [oracle](std::span<const Point> t) { return (*oracle)(t); };
  }
  if (spec.condition == "rank4-independent") {
    std::vector<std::uint64_t> words;
    for (const auto& p : points) words.push_back(f2_word(p));
    return [words](std::span<const Point> t) {
      if (skew_rank(words[t.back()]) != 4) return false;
      std::vector<std::uint64_t> v;
      for (auto p : t) v.push_back(words[p]);
      return rank_u64(v) == v.size();
    };
  }
  return {};
}

namespace {

// GL(5, F_2) on the dual P^9 via h -> h o wedge^2(g^{-1}).
PermGroup dual_pluecker_group(const std::vector<ProjPoint>& points) {
  std::vector<int> index(1024, -1);
  for (std::size_t k = 0; k < points.size(); ++k) index[f2_word(points[k])] = static_cast<int>(k);
  // columns of g as 5-bit masks
  const std::vector<std::array<unsigned, 5>> gens = {{1, 3, 4, 8, 16}, {2, 4, 8, 16, 1}};
  std::vector<Permutation> perms;
  for (const auto& g : gens) {
    // inverse by search over images of the basis
    std::array<unsigned, 5> inv{};
    for (unsigned t = 0; t < 5; ++t)
      for (unsigned x = 1; x < 32; ++x) {
        unsigned y = 0;
        for (int c = 0; c < 5; ++c)
          if (x >> c & 1) y ^= g[static_cast<std::size_t>(c)];
        if (y == (1u << t)) inv[t] = x;
      }
    std::array<unsigned, 10> col{};  // wedge^2(g^{-1}) e_k
    for (int k = 0; k < 10; ++k) {
      const unsigned u = inv[static_cast<std::size_t>(kPairs[k][0])], v = inv[static_cast<std::size_t>(kPairs[k][1])];
      for (int m = 0; m < 10; ++m) {
        const int i = kPairs[m][0], j = kPairs[m][1];
        const unsigned coef = ((u >> i & 1) & (v >> j & 1)) ^ ((u >> j & 1) & (v >> i & 1));
        col[static_cast<std::size_t>(k)] |= coef << m;
      }
    }
    std::vector<Point> img(points.size());
    for (std::size_t p = 0; p < points.size(); ++p) {
      const std::uint64_t h = f2_word(points[p]);
      std::uint64_t r = 0;
      for (int m = 0; m < 10; ++m) r |= std::uint64_t(std::popcount(h & col[static_cast<std::size_t>(m)]) & 1) << m;
      img[p] = static_cast<Point>(index[r]);
    }
    perms.push_back(Permutation::from_images(img));
  }
  SchreierSimsOptions opt;
  opt.known_order = 9999360;
  opt.deterministic = false;
  PermGroup g(points.size(), perms, opt);
  if (g.order() != 9999360) throw IntegrityError("GL(5,2) on the dual P^9 has the wrong order");
  return g;
}

}  // namespace

StratumAction stratum_action(const StratumSpec& spec, std::uint64_t seed) {
  if (spec.id == "g6-generic") {
    StratumAction a;
    a.points = enumerate_points(AmbientSpace::projective(9), 1);
    a.group = dual_pluecker_group(a.points);
    return a;
  }
  if (spec.ambient.empty()) throw UnsupportedError("stratum has no orbit enumeration");
  const auto space = AmbientSpace::parse(spec.ambient);
  if (spec.id == "g7-generic") {
    auto so = so_generators(seed);
    return {enumerate_points(space, 1), so.group};
  }
  if (spec.symmetry == "ignore-group") {
    auto pts = enumerate_points(space, 1);
    const auto n = pts.size();
    return {std::move(pts), PermGroup::trivial(n)};
  }
  auto aut = automorphism_generators(space);
  if (spec.symmetry == "swap-free") {
    std::vector<Permutation> gens;
    GroupOrder order = 1;
    for (auto f : space.factors()) {
      const GroupOrder q = f + 1 == 2 ? 6 : 168;
      order *= q;
    }
    for (std::size_t k = 0; k < aut.witnesses.size(); ++k)
      if (!aut.witnesses[k].swap) gens.push_back(aut.group.generators()[k]);
    PermGroup g(aut.points.size(), gens);
    if (g.order() != order) throw IntegrityError("swap-free subgroup has the wrong order");
    return {std::move(aut.points), std::move(g)};
  }
  return {std::move(aut.points), std::move(aut.group)};
}

// ---- candidates -----------------------------------------------------------------

std::uint64_t count_points(const CandidateScheme& c, int i, std::size_t budget) {
  const auto space = AmbientSpace::parse(c.ambient);
  std::vector<FormSpace> spaces;
  for (const auto& f : c.forms) spaces.emplace_back(space, f.degree);
  std::uint64_t n = 0;
  for (const auto& p : enumerate_points(space, i, budget)) {
    bool zero = true;
    for (std::size_t k = 0; k < c.forms.size() && zero; ++k) zero = spaces[k].evaluate(c.forms[k].coeffs, p, i) == 0;
    n += zero;
  }
  return n;
}

bool verify_exactness(const CandidateScheme& c) {
  const auto space = AmbientSpace::parse(c.ambient);
  std::vector<FormSpace> spaces;
  for (const auto& f : c.forms) spaces.emplace_back(space, f.degree);
  std::vector<ProjPoint> locus;
  for (const auto& p : enumerate_points(space, 1)) {
    bool zero = true;
    for (std::size_t k = 0; k < c.forms.size() && zero; ++k) zero = spaces[k].evaluate(c.forms[k].coeffs, p, 1) == 0;
    if (zero) locus.push_back(p);
  }
  auto pts = c.points;
  std::sort(pts.begin(), pts.end());
  return locus == pts;
}

// ---- the orbit paradigm ---------------------------------------------------------

namespace {

// Ambient F_{2^i}-points (on the fixed forms) with form tables, i >= 2.
class ExtensionTables {
 public:
  using Provider = std::function<std::vector<ProjPoint>(int)>;

  // provider, when given, replaces the ambient points (and the fixed forms)
  ExtensionTables(const AmbientSpace& space, std::vector<FormRecord> fixed, std::vector<std::vector<int>> degrees,
                  int max_ext, std::size_t budget, Provider provider = {})
      : space_(space), fixed_(std::move(fixed)), degrees_(std::move(degrees)), budget_(budget),
        provider_(std::move(provider)) {
    for (const auto& d : degrees_) spaces_.emplace_back(space_, d);
    max_ = 1;
    for (int i = 2; i <= max_ext; ++i) {
      if (space_.coordinate_degree(i) > 8 || (!provider_ && point_count(space_, i) > budget_)) break;
      max_ = i;
    }
    tables_.resize(static_cast<std::size_t>(max_ + 1));
    built_.assign(static_cast<std::size_t>(max_ + 1), false);
  }

  int max_extension() const { return max_; }
  const FormSpace& form_space(std::size_t d) const { return spaces_[d]; }

  const PointTable& table(std::size_t d, int i) {
    std::lock_guard<std::mutex> lock(m_);
    const auto ii = static_cast<std::size_t>(i);
    if (!built_[ii]) {
      std::vector<FormSpace> fs;
      for (const auto& f : fixed_) fs.emplace_back(space_, f.degree);
      std::vector<ProjPoint> pts;
      if (provider_) pts = provider_(i);
      else for (auto& p : enumerate_points(space_, i, budget_)) {
        bool zero = true;
        for (std::size_t k = 0; k < fixed_.size() && zero; ++k) zero = fs[k].evaluate(fixed_[k].coeffs, p, i) == 0;
        if (zero) pts.push_back(std::move(p));
      }
      for (const auto& s : spaces_) tables_[ii].emplace_back(s, pts, i);
      built_[ii] = true;
    }
    return tables_[ii][d];
  }

 private:
  AmbientSpace space_;
  std::vector<FormRecord> fixed_;
  std::vector<std::vector<int>> degrees_;
  std::vector<FormSpace> spaces_;
  std::size_t budget_;
  Provider provider_;
  int max_ = 1;
  std::mutex m_;
  std::vector<std::vector<PointTable>> tables_;
  std::vector<bool> built_;
};

struct Partial {
  std::vector<FormRecord> forms;  // X_1, ..., X_{m-1}
  std::shared_ptr<const Quotient> quotient;
  std::optional<BitVec> lower_bound;  // final normal forms must exceed it
};

struct Engine {
  const StratumSpec* spec;
  AmbientSpace space;
  std::vector<FormRecord> fixed;  // recorded first in every candidate
  std::size_t final_index = 0;    // index of the final degree in tables
  std::vector<std::size_t> partial_index;
  std::unique_ptr<ExtensionTables> tables;
  int genus = 0;
  int max_ext = 0;
  std::size_t refinement_limit = 0;

  std::vector<CandidateScheme> refine(const std::vector<ProjPoint>& locus_f2, const std::vector<ProjPoint>& z,
                                      const Partial& partial, std::uint64_t& scanned) const {
    std::vector<ProjPoint> y;
    const FormSpace& fin = tables->form_space(final_index);
    for (const auto& p : locus_f2) {
      bool zero = true;
      for (std::size_t k = 0; k < partial.forms.size() && zero; ++k)
        zero = tables->form_space(partial_index[k]).evaluate(partial.forms[k].coeffs, p, 1) == 0;
      if (zero) y.push_back(p);
    }
    std::vector<CandidateScheme> out;
    const auto sols = exact_point_refinement(fin, *partial.quotient, y, z, refinement_limit);
    std::vector<BitVec> masks;
    for (const auto& f : sols) {
      ++scanned;
      if (partial.lower_bound && !(*partial.lower_bound < f)) continue;
      std::vector<std::uint64_t> counts{z.size()};
      bool ok = table2_filter(counts, genus);
      for (int i = 2; ok && i <= max_ext; ++i) {
        const auto ii = static_cast<std::size_t>(i - 2);
        if (masks.size() <= ii) {
          BitVec mask;
          const auto& ft = tables->table(final_index, i);
          mask = BitVec(ft.size());
          for (auto& w : mask.words()) w = ~std::uint64_t{0};
          if (ft.size() % 64) mask.words().back() = (std::uint64_t{1} << (ft.size() % 64)) - 1;
          for (std::size_t k = 0; k < partial.forms.size(); ++k) {
            const BitVec zk = tables->table(partial_index[k], i).zero_mask(partial.forms[k].coeffs);
            auto mw = mask.words();
            for (std::size_t w = 0; w < mw.size(); ++w) mw[w] &= zk.word(w);
          }
          masks.push_back(std::move(mask));
        }
        counts.push_back(tables->table(final_index, i).count_zeros(f, masks[ii]));
        ok = table2_filter(counts, genus);
      }
      if (!ok) continue;
      CandidateScheme c;
      c.stratum = spec->id;
      c.ambient = space.id();
      c.forms = fixed;
      for (const auto& pf : partial.forms) c.forms.push_back(pf);
      c.forms.push_back({fin.degree(), f});
      c.points = z;
      c.counts = counts;
      if (static_cast<int>(counts.size()) < genus) c.flags.push_back("partial-counts");
      out.push_back(std::move(c));
    }
    return out;
  }
};

std::vector<BitVec> span_elements(const std::vector<BitVec>& basis, bool include_zero = false) {
  std::vector<BitVec> out;
  const std::uint64_t total = std::uint64_t{1} << basis.size();
  for (std::uint64_t s = include_zero ? 0 : 1; s < total; ++s) {
    BitVec v(basis.empty() ? 0 : basis[0].size());
    for (std::size_t k = 0; k < basis.size(); ++k)
      if (s >> k & 1) v ^= basis[k];
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<int> chosen_sizes(const StratumSpec& spec, const StratumOptions& o) {
  std::vector<int> sizes = o.subset_sizes.empty() ? spec.subset_sizes : o.subset_sizes;
  const auto pre = stratum_precheck(spec.genus, spec.name);
  std::set<int> firsts;
  for (const auto& t : pre.surviving) firsts.insert(t[0]);
  std::vector<int> out;
  for (int s : sizes)
    if (firsts.count(s)) out.push_back(s);
  return out;
}

void log(const StratumOptions& o, const std::string& m) {
  if (o.log) o.log(m);
}

// Partial choices X_1, ..., X_{m-1} through z for the orbit strata.
std::vector<Partial> partial_choices(const Engine& e, const std::vector<ProjPoint>& z,
                                     const std::shared_ptr<const Quotient>& fixed_quotient) {
  const auto& id = e.spec->id;
  const FormSpace& fin = e.tables->form_space(e.final_index);
  if (e.spec->partial_degrees.empty() || id == "g7-self-adjoint") return {Partial{{}, fixed_quotient, {}}};
  const FormSpace& ps = e.tables->form_space(e.partial_index[0]);
  const auto ker = hypersurfaces_through(ps, z);
  std::vector<Partial> out;
  if (id == "g7-trigonal-maroni1") {
    for (const auto& f : span_elements(ker)) {
      // x_0 L_0(y) + x_1 L_1(y) is smooth iff L_0 and L_1 are independent
      const std::uint64_t l0 = f.word() & 7, l1 = f.word() >> 3 & 7;
      if (!l0 || !l1 || l0 == l1) continue;
      auto q = std::make_shared<Quotient>(fin.dimension(), ideal_in_degree(ps, std::vector<BitVec>{f}, fin));
      out.push_back({{FormRecord{ps.degree(), f}}, q, {}});
    }
  } else if (id == "g7-rational-pair" || id == "g7-irrational-pair") {
    std::set<std::pair<BitVec, BitVec>> seen;
    const auto elems = span_elements(ker);
    for (std::size_t a = 0; a < elems.size(); ++a)
      for (std::size_t b = a + 1; b < elems.size(); ++b) {
        F2Matrix m(0, ps.dimension());
        m.append_row(elems[a]);
        m.append_row(elems[b]);
        m.rref();
        auto key = std::make_pair(m.row(0), m.row(1));
        if (!seen.insert(key).second) continue;
        std::vector<BitVec> pencil{key.first, key.second};
        auto q = std::make_shared<Quotient>(fin.dimension(), ideal_in_degree(ps, pencil, fin));
        out.push_back({{FormRecord{ps.degree(), key.first}, FormRecord{ps.degree(), key.second}}, q, {}});
      }
  } else if (id == "g7-tetragonal") {
    // classes of (1,2)-forms modulo multiples of x0 y0 + x1 y1, in normal form
    const Quotient& qi = *fixed_quotient;
    std::set<BitVec> classes;
    for (const auto& f : span_elements(ker)) {
      BitVec r = qi.reduce(f);
      if (r.any()) classes.insert(r);
    }
    for (const auto& c : classes) out.push_back({{FormRecord{ps.degree(), c}}, fixed_quotient, c});
  } else {
    throw UnsupportedError("no partial enumeration for " + id);
  }
  return out;
}

// Smallest-index-first combinations of k elements of n.
template <class F>
void for_each_subset(std::size_t n, std::size_t k, F&& f) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

void add_stat(StratumReport& r, const std::string& k, std::uint64_t v) { r.stats.emplace_back(k, v); }

StratumReport run_orbit_stratum(const StratumSpec& spec, const StratumOptions& o) {
  StratumReport rep;
  rep.stratum = spec.id;
  const auto t_all = Clock::now();
  const auto sizes = chosen_sizes(spec, o);
  if (sizes.empty()) {
    rep.notes.push_back("no subset size survives the point-count precheck");
    return rep;
  }
  const int depth = *std::max_element(sizes.begin(), sizes.end());

  Engine e;
  e.spec = &spec;
  e.space = AmbientSpace::parse(spec.ambient);
  e.genus = spec.genus;
  e.refinement_limit = o.refinement_limit;
  const int want_ext = o.max_extension > 0 ? o.max_extension : spec.genus;

  std::vector<std::vector<int>> degrees{spec.final_degree};
  if (!spec.partial_degrees.empty() && spec.id != "g7-self-adjoint") {
    degrees.push_back(spec.partial_degrees[0]);
    e.partial_index.assign(spec.partial_degrees.size(), 1);
  }

  std::vector<BitVec> cubics{BitVec()};
  if (spec.id == "g7-self-adjoint") {
    const FormSpace cubic(e.space, {3});
    const auto all = self_adjoint_cubics(cubic);
    cubics.clear();
    if (o.cubics.empty())
      cubics = all;
    else
      for (int k : o.cubics) cubics.push_back(all.at(static_cast<std::size_t>(k)));
    add_stat(rep, "x3-choices", cubics.size());
  }

  std::uint64_t greens_total = 0, scanned = 0, partial_total = 0;
  for (const auto& x3 : cubics) {
    const auto t0 = Clock::now();
    if (x3.size()) e.fixed = {FormRecord{{3}, x3}};
    e.tables = std::make_unique<ExtensionTables>(e.space, e.fixed, degrees, want_ext, o.table_budget);
    e.max_ext = e.tables->max_extension();
    const FormSpace& fin = e.tables->form_space(0);

    // S, G and the tree
    StratumAction act = stratum_action(spec, o.seed);
    if (!e.fixed.empty()) {
      std::vector<ProjPoint> on;
      const FormSpace cubic(e.space, {3});
      for (const auto& p : act.points)
        if (cubic.evaluate(x3, p) == 0) on.push_back(p);
      act.points = std::move(on);
      act.group = PermGroup::trivial(act.points.size());
    }
    TreeOptions topt;
    topt.seed = o.seed;
    topt.workers = o.workers;
    OrbitTree tree(act.group, act.points.size(), eligibility_oracle_for(spec, act.points, o.og), topt);
    tree.extend_to(static_cast<std::size_t>(depth));
    rep.timings.emplace_back("tree", since(t0));

    std::shared_ptr<const Quotient> base_q;
    if (spec.id == "g7-self-adjoint") {
      const FormSpace cubic(e.space, {3});
      base_q = std::make_shared<Quotient>(fin.dimension(), ideal_in_degree(cubic, std::vector<BitVec>{x3}, fin));
    } else if (spec.id == "g7-tetragonal") {
      const FormSpace l(e.space, {1, 1});
      const BitVec eq = form_from_exponents(l, {{1, 0, 1, 0, 0, 0}, {0, 1, 0, 1, 0, 0}});
      base_q = std::make_shared<Quotient>(fin.dimension(), ideal_in_degree(l, std::vector<BitVec>{eq}, fin));
    } else {
      base_q = std::make_shared<Quotient>(fin.dimension(), std::vector<BitVec>{});
    }

    std::vector<std::vector<ProjPoint>> reps;
    for (int k : sizes)
      for (const auto& g : tree.green_nodes(static_cast<std::size_t>(k))) {
        std::vector<ProjPoint> z;
        for (auto p : g.label) z.push_back(act.points[p]);
        std::sort(z.begin(), z.end());
        reps.push_back(std::move(z));
      }
    greens_total += reps.size();
    log(o, spec.id + ": " + std::to_string(reps.size()) + " orbit representatives");
    const auto t1 = Clock::now();
    struct Out {
      std::vector<CandidateScheme> c;
      std::uint64_t scanned = 0, partials = 0;
    };
    auto results = parallel_map<Out>(reps.size(), o.workers, [&](std::size_t k) {
      Out out;
      const auto parts = partial_choices(e, reps[k], base_q);
      out.partials = parts.size();
      for (const auto& p : parts) {
        auto c = e.refine(act.points, reps[k], p, out.scanned);
        for (auto& x : c) out.c.push_back(std::move(x));
      }
      return out;
    });
    for (auto& r : results) {
      scanned += r.scanned;
      partial_total += r.partials;
      for (auto& c : r.c) rep.candidates.push_back(std::move(c));
      if (rep.candidates.size() > o.max_candidates) throw ResourceError("candidate limit exceeded");
    }
    rep.timings.emplace_back("refine", since(t1));
    rep.notes.push_back("counts computed up to F_2^" + std::to_string(e.max_ext));
  }
  add_stat(rep, "orbit-representatives", greens_total);
  add_stat(rep, "partial-intersections", partial_total);
  add_stat(rep, "final-forms-scanned", scanned);
  add_stat(rep, "candidates", rep.candidates.size());
  rep.timings.emplace_back("total", since(t_all));
  return rep;
}

}  // namespace

// ---- genus 6, generic ---------------------------------------------------------------

Genus6Hyperplanes genus6_hyperplane_classes(const StratumOptions& o) {
  const auto t0 = Clock::now();
  const auto& spec = stratum_spec("g6-generic");
  StratumAction act = stratum_action(spec, o.seed);
  TreeOptions topt;
  topt.seed = o.seed;
  topt.workers = o.workers;
  OrbitTree tree(act.group, act.points.size(), eligibility_oracle_for(spec, act.points), topt);
  tree.extend_to(4);
  const auto greens = tree.green_nodes(4);
  Genus6Hyperplanes out;
  out.greens = greens.size();

  std::vector<int> index(1024, -1);
  for (std::size_t k = 0; k < act.points.size(); ++k) index[f2_word(act.points[k])] = static_cast<int>(k);
  auto ids = parallel_map<std::uint32_t>(greens.size(), o.workers, [&](std::size_t g) {
    std::uint64_t b[4];
    for (int k = 0; k < 4; ++k) b[k] = f2_word(act.points[greens[g].label[static_cast<std::size_t>(k)]]);
    std::vector<std::uint64_t> vecs;
    for (unsigned s = 1; s < 16; ++s) {
      std::uint64_t v = 0;
      for (int k = 0; k < 4; ++k)
        if (s >> k & 1) v ^= b[k];
      vecs.push_back(v);
    }
    std::uint32_t best = UINT32_MAX;
    for_each_subset(15, 4, [&](const std::vector<std::size_t>& idx) {
      std::uint64_t q[4];
      Point s[4];
      for (int k = 0; k < 4; ++k) {
        q[k] = vecs[idx[static_cast<std::size_t>(k)]];
        s[k] = static_cast<Point>(index[q[k]]);
      }
      if (rank_u64(q) < 4) return;
      const auto r = tree.find_green(s);
      if (r && *r < best) best = *r;
    });
    return best;
  });
  std::set<std::uint32_t> seen;
  const auto gr = AmbientSpace::grassmannian25();
  const FormSpace lin(gr, {1}), quad(gr, {2}), cub(gr, {3});
  const auto plq = pluecker_quadrics(quad);
  for (std::size_t g = 0; g < greens.size(); ++g) {
    if (!seen.insert(ids[g]).second) continue;
    HyperplaneClass c;
    c.node = ids[g];
    for (std::size_t k = 0; k < greens.size(); ++k)
      if (greens[k].node == ids[g])
        for (auto p : greens[k].label) c.hyperplanes.push_back(act.points[p]);
    std::sort(c.hyperplanes.begin(), c.hyperplanes.end());
    std::vector<BitVec> hs;
    for (const auto& h : c.hyperplanes) hs.push_back(BitVec::from_word(f2_word(h), 10));
    auto i2 = ideal_in_degree(lin, hs, quad);
    for (const auto& q : plq) i2.push_back(q);
    c.hilbert2 = static_cast<int>(Quotient(quad.dimension(), i2).dimension());
    auto i3 = ideal_in_degree(lin, hs, cub);
    for (auto& r : ideal_in_degree(quad, plq, cub)) i3.push_back(std::move(r));
    c.hilbert3 = static_cast<int>(Quotient(cub.dimension(), i3).dimension());
    c.proper = c.hilbert2 == 16 && c.hilbert3 == 31;
    out.classes.push_back(std::move(c));
  }
  std::sort(out.classes.begin(), out.classes.end(),
            [](const HyperplaneClass& a, const HyperplaneClass& b) { return a.node < b.node; });
  out.seconds = since(t0);
  return out;
}

std::vector<ProjPoint> gr25_section_points(std::span<const std::uint64_t> hyperplanes, int i) {
  const BinaryField& f = BinaryField::get(i);
  const unsigned q = f.size();
  // h(u ^ v) = sum_j v_j (H u)_j with H the alternating matrix of h
  std::vector<std::array<unsigned, 5>> rows_of;  // rows_of[k][j]: mask of i with h_{ij} = 1
  for (auto h : hyperplanes) {
    std::array<unsigned, 5> r{};
    for (int k = 0; k < 10; ++k)
      if (h >> k & 1) {
        r[static_cast<std::size_t>(kPairs[k][1])] |= 1u << kPairs[k][0];
        r[static_cast<std::size_t>(kPairs[k][0])] |= 1u << kPairs[k][1];
      }
    rows_of.push_back(r);
  }
  const auto space = AmbientSpace::grassmannian25();
  std::vector<ProjPoint> out;
  std::array<Elem, 5> u{};
  // every line meets u_0 = 0
  for (int lead = 1; lead < 5; ++lead) {
    const int free = 4 - lead;
    std::uint64_t total = 1;
    for (int k = 0; k < free; ++k) total *= q;
    for (std::uint64_t t = 0; t < total; ++t) {
      u.fill(0);
      u[static_cast<std::size_t>(lead)] = 1;
      std::uint64_t r = t;
      for (int k = lead + 1; k < 5; ++k, r /= q) u[static_cast<std::size_t>(k)] = static_cast<Elem>(r % q);
      // matrix rows (H_k u)
      std::vector<std::array<Elem, 5>> m;
      for (const auto& h : rows_of) {
        std::array<Elem, 5> row{};
        for (int j = 0; j < 5; ++j)
          for (int a = 0; a < 5; ++a)
            if (h[static_cast<std::size_t>(j)] >> a & 1) row[static_cast<std::size_t>(j)] ^= u[static_cast<std::size_t>(a)];
        m.push_back(row);
      }
      // row reduce, pivots
      std::vector<int> piv;
      std::size_t rank = 0;
      for (int c = 0; c < 5 && rank < m.size(); ++c) {
        std::size_t s = rank;
        while (s < m.size() && !m[s][static_cast<std::size_t>(c)]) ++s;
        if (s == m.size()) continue;
        std::swap(m[s], m[rank]);
        const Elem iv = f.inv(m[rank][static_cast<std::size_t>(c)]);
        for (auto& x : m[rank]) x = f.mul(x, iv);
        for (std::size_t o = 0; o < m.size(); ++o)
          if (o != rank && m[o][static_cast<std::size_t>(c)]) {
            const Elem a = m[o][static_cast<std::size_t>(c)];
            for (int j = 0; j < 5; ++j) m[o][static_cast<std::size_t>(j)] ^= f.mul(a, m[rank][static_cast<std::size_t>(j)]);
          }
        piv.push_back(c);
        ++rank;
      }
      if (rank > 3) continue;
      std::vector<std::array<Elem, 5>> ker;
      for (int c = 0; c < 5; ++c) {
        if (std::find(piv.begin(), piv.end(), c) != piv.end()) continue;
        std::array<Elem, 5> v{};
        v[static_cast<std::size_t>(c)] = 1;
        for (std::size_t k = 0; k < piv.size(); ++k) v[static_cast<std::size_t>(piv[k])] = m[k][static_cast<std::size_t>(c)];
        ker.push_back(v);
      }
      std::uint64_t combos = 1;
      for (std::size_t k = 0; k < ker.size(); ++k) combos *= q;
      for (std::uint64_t s = 1; s < combos; ++s) {
        std::array<Elem, 5> v{};
        std::uint64_t x = s;
        bool normalized = false;
        for (std::size_t k = 0; k < ker.size(); ++k, x /= q) {
          const Elem c = static_cast<Elem>(x % q);
          if (!normalized && c) {
            if (c != 1) break;
            normalized = true;
          }
          for (int j = 0; j < 5; ++j) v[static_cast<std::size_t>(j)] ^= f.mul(c, ker[k][static_cast<std::size_t>(j)]);
        }
        if (!normalized) continue;
        ProjPoint p;
        p.coords.resize(10);
        bool any = false;
        for (int k = 0; k < 10; ++k) {
          const auto a = static_cast<std::size_t>(kPairs[k][0]), b = static_cast<std::size_t>(kPairs[k][1]);
          p.coords[static_cast<std::size_t>(k)] = f.mul(u[a], v[b]) ^ f.mul(u[b], v[a]);
          any = any || p.coords[static_cast<std::size_t>(k)];
        }
        if (any) out.push_back(normalize(space, std::move(p), i));
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

StratumReport run_genus6_generic(const StratumSpec& spec, const StratumOptions& o) {
  StratumReport rep;
  rep.stratum = spec.id;
  const auto t_all = Clock::now();
  const auto classes = genus6_hyperplane_classes(o);
  rep.timings.emplace_back("hyperplane-classes", classes.seconds);
  add_stat(rep, "depth4-greens", classes.greens);
  add_stat(rep, "hyperplane-classes", classes.classes.size());
  std::size_t proper = 0;
  for (const auto& c : classes.classes) proper += c.proper;
  add_stat(rep, "proper-classes", proper);
  if (classes.classes.size() != 55) {
    rep.ok = false;
    rep.failure = "hyperplane-classes: expected 55, found " + std::to_string(classes.classes.size());
    return rep;
  }
  const auto sizes = chosen_sizes(spec, o);

  Engine e;
  e.spec = &spec;
  e.space = AmbientSpace::grassmannian25();
  e.genus = 6;
  e.refinement_limit = o.refinement_limit;
  e.final_index = 0;
  e.partial_index.assign(4, 1);
  const FormSpace quad(e.space, {2}), lin(e.space, {1});
  const auto plq = pluecker_quadrics(quad);
  const auto gr_points = enumerate_points(e.space, 1);

  std::vector<const HyperplaneClass*> run;
  for (const auto& c : classes.classes)
    if ((c.proper || o.include_improper) && run.size() < o.class_limit) run.push_back(&c);
  add_stat(rep, "classes-run", run.size());

  const auto t1 = Clock::now();
  std::uint64_t scanned = 0, subsets = 0;
  for (const auto* c : run) {
    Partial part;
    std::vector<BitVec> hs;
    for (const auto& h : c->hyperplanes) {
      hs.push_back(BitVec::from_word(f2_word(h), 10));
      part.forms.push_back({{1}, hs.back()});
    }
    std::vector<std::uint64_t> words;
    for (const auto& h : hs) words.push_back(h.word());
    // the points of Gr cap the hyperplanes, enumerated directly
    e.tables = std::make_unique<ExtensionTables>(
        e.space, std::vector<FormRecord>{}, std::vector<std::vector<int>>{{2}, {1}},
        c->proper ? (o.max_extension > 0 ? o.max_extension : 6) : std::min(o.max_extension > 0 ? o.max_extension : 3, 3),
        o.table_budget,
        [words](int i) { return gr25_section_points(words, i); });
    e.max_ext = e.tables->max_extension();
    auto rel = ideal_in_degree(lin, hs, quad);
    for (const auto& q : plq) rel.push_back(q);
    part.quotient = std::make_shared<Quotient>(quad.dimension(), rel);
    std::vector<ProjPoint> y;
    for (const auto& p : gr_points) {
      bool zero = true;
      for (const auto& h : hs) zero = zero && lin.evaluate(h, p) == 0;
      if (zero) y.push_back(p);
    }
    std::vector<std::vector<ProjPoint>> zs;
    for (int k : sizes)
      for_each_subset(y.size(), static_cast<std::size_t>(k), [&](const std::vector<std::size_t>& idx) {
        std::vector<ProjPoint> z;
        for (auto i : idx) z.push_back(y[i]);
        zs.push_back(std::move(z));
      });
    subsets += zs.size();
    struct Out {
      std::vector<CandidateScheme> c;
      std::uint64_t scanned = 0;
    };
    auto results = parallel_map<Out>(zs.size(), o.workers, [&](std::size_t k) {
      Out out;
      out.c = e.refine(y, zs[k], part, out.scanned);
      return out;
    });
    for (auto& r : results) {
      scanned += r.scanned;
      for (auto& x : r.c) {
        if (!c->proper) x.flags.push_back("improper-linear-section");
        rep.candidates.push_back(std::move(x));
      }
      if (rep.candidates.size() > o.max_candidates) throw ResourceError("candidate limit exceeded");
    }
    log(o, "g6-generic: class " + std::to_string(c->node) + " |Y(F_2)| = " + std::to_string(y.size()) +
               ", candidates so far " + std::to_string(rep.candidates.size()));
  }
  rep.timings.emplace_back("refine", since(t1));
  add_stat(rep, "point-subsets", subsets);
  add_stat(rep, "final-forms-scanned", scanned);
  add_stat(rep, "candidates", rep.candidates.size());
  rep.notes.push_back("counts computed up to F_2^" + std::to_string(e.max_ext));
  rep.timings.emplace_back("total", since(t_all));
  return rep;
}

}  // namespace

StratumReport run_stratum(const StratumSpec& spec, const StratumOptions& o) {
  if (spec.name == "bielliptic") {
    StratumReport rep;
    rep.stratum = spec.id;
    const auto pre = stratum_precheck(spec.genus, "bielliptic");
    for (const auto& c : pre.checks) rep.notes.push_back(c.claim + (c.holds ? "" : " [does not hold]"));
    if (pre.external) rep.notes.push_back("requires external verification");
    return rep;
  }
  if (spec.id == "g6-generic") return run_genus6_generic(spec, o);
  if (spec.id == "g7-generic") {
    auto g = genus7_generic_pipeline(o);
    StratumReport rep;
    rep.stratum = spec.id;
    rep.ok = g.ok;
    rep.failure = g.failure;
    for (const auto& [k, v] : g.stats) rep.stats.emplace_back(k, v);
    rep.timings = g.timings;
    rep.candidates = std::move(g.candidates);
    return rep;
  }
  return run_orbit_stratum(spec, o);
}

}  // namespace olt
