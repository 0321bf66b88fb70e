#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <mutex>
#include <thread>
#include <unordered_map>

#include "olt/errors.hpp"
#include "olt/quadric_count.hpp"
#include "olt/spinor.hpp"
#include "olt/strata.hpp"

namespace olt {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

// Echelon basis with distinct leading bits; reduce() gives the canonical coset representative.
struct Echelon {
  std::vector<std::uint64_t> rows;  // sorted by leading bit, descending

  static int lead(std::uint64_t x) { return 63 - std::countl_zero(x); }
  std::uint64_t reduce(std::uint64_t x) const {
    for (auto r : rows)
      if (x >> lead(r) & 1) x ^= r;
    return x;
  }
  bool add(std::uint64_t x) {
    x = reduce(x);
    if (!x) return false;
    const int l = lead(x);
    for (auto& r : rows)
      if (r >> l & 1) r ^= x;
    rows.push_back(x);
    std::sort(rows.begin(), rows.end(), [](auto a, auto b) { return lead(a) > lead(b); });
    return true;
  }
};

// One monomial in up to 5 variables, degree < 16 in each: 4 bits per variable.
using Mono = std::uint32_t;

int mono_degree(Mono m) {
  int d = 0;
  for (int k = 0; k < 5; ++k) d += m >> (4 * k) & 15;
  return d;
}

std::vector<Mono> monomials_below(int vars, int n) {
  std::vector<Mono> out;
  std::vector<int> e(static_cast<std::size_t>(vars), 0);
  auto rec = [&](auto&& self, int k, int left) -> void {
    if (k == vars) {
      Mono m = 0;
      for (int j = 0; j < vars; ++j) m |= static_cast<Mono>(e[static_cast<std::size_t>(j)]) << (4 * j);
      out.push_back(m);
      return;
    }
    for (int d = 0; d <= left; ++d) {
      e[static_cast<std::size_t>(k)] = d;
      self(self, k + 1, left - d);
    }
  };
  rec(rec, 0, n - 1);
  return out;
}

}  // namespace

std::optional<int> og_local_multiplicity(std::span<const std::uint64_t> basis, std::uint64_t p, int max_degree) {
  Echelon span;
  for (auto b : basis) span.add(b);
  if (span.reduce(p)) throw DomainError("point outside the span");
  // affine chart p + sum t_k b_k with b_k completing p to a basis
  Echelon e;
  e.add(p);
  std::vector<std::uint64_t> frame{p};
  for (auto b : basis)
    if (e.add(b)) frame.push_back(b);
  const int vars = static_cast<int>(frame.size()) - 1;
  if (vars > 5) throw DomainError("span too large for the local computation");

  // each quadric as a list of monomials in t (s = 1)
  std::vector<std::vector<Mono>> polys;
  for (const auto& q : og_quadric_forms()) {
    const auto r = q.restrict_to(frame);
    std::vector<Mono> poly;
    if (r.diag & 1) poly.push_back(0);
    for (int k = 1; k <= vars; ++k) {
      if (r.cross[0] >> k & 1) poly.push_back(Mono{1} << (4 * (k - 1)));
      if (r.diag >> k & 1) poly.push_back(Mono{2} << (4 * (k - 1)));
      for (int l = k + 1; l <= vars; ++l)
        if (r.cross[static_cast<std::size_t>(k)] >> l & 1)
          poly.push_back((Mono{1} << (4 * (k - 1))) + (Mono{1} << (4 * (l - 1))));
    }
    if (!poly.empty()) polys.push_back(std::move(poly));
  }
  for (const auto& poly : polys)
    if (std::find(poly.begin(), poly.end(), Mono{0}) != poly.end()) throw IntegrityError("point not on OG+");

  std::optional<std::size_t> previous;
  for (int n = 1; n <= max_degree; ++n) {
    const auto monos = monomials_below(vars, n);
    std::unordered_map<Mono, std::size_t> col;
    for (std::size_t k = 0; k < monos.size(); ++k) col[monos[k]] = k;
    F2Matrix m(0, monos.size());
    for (const auto& poly : polys)
      for (auto a : monos) {
        BitVec row(monos.size());
        for (auto b : poly) {
          const Mono c = a + b;
          if (mono_degree(c) < n) row.flip(col.at(c));
        }
        if (row.any()) m.append_row(std::move(row));
      }
    const std::size_t dim = monos.size() - m.rank();
    if (previous && *previous == dim) return static_cast<int>(dim);
    previous = dim;
  }
  return std::nullopt;
}

namespace {

struct Plane {
  std::vector<std::uint64_t> basis;  // 7 words
};

CandidateScheme make_candidate(const Plane& w, const std::vector<std::uint16_t>& og_words, int max_ext,
                               std::map<std::string, std::uint64_t>& stats) {
  CandidateScheme c;
  c.stratum = "g7-generic";
  c.ambient = "og+";
  F2Matrix m(0, 16);
  for (auto b : w.basis) m.append_row(BitVec::from_word(b, 16));
  for (auto& a : m.kernel()) c.forms.push_back({{1}, a});
  Echelon e;
  for (auto b : w.basis) e.add(b);
  for (auto s : og_words)
    if (!e.reduce(s)) {
      ProjPoint p;
      p.coords.resize(16);
      for (int k = 0; k < 16; ++k) p.coords[static_cast<std::size_t>(k)] = s >> k & 1;
      c.points.push_back(std::move(p));
    }
  std::sort(c.points.begin(), c.points.end());
  std::vector<QuadraticForm2> qs;
  for (const auto& q : og_quadric_forms()) qs.push_back(q.restrict_to(w.basis));
  c.counts.push_back(c.points.size());
  bool ok = table2_filter(c.counts, 7);
  for (int j = 2; ok && j <= max_ext; ++j) {
    std::uint64_t cap = 0;
    for (const auto& t : table2(7))
      if (std::equal(c.counts.begin(), c.counts.end(), t.begin(), [](std::uint64_t a, int b) { return a == static_cast<std::uint64_t>(b); }))
        cap = std::max<std::uint64_t>(cap, static_cast<std::uint64_t>(t[static_cast<std::size_t>(j - 1)]));
    c.counts.push_back(count_projective_zeros(qs, 7, j, cap));
    ok = table2_filter(c.counts, 7);
  }
  if (!ok) {
    ++stats["rejected-by-counts"];
    c.counts.clear();
    return c;
  }
  if (static_cast<int>(c.counts.size()) < 7) c.flags.push_back("partial-counts");
  return c;
}

}  // namespace

Genus7Report genus7_generic_pipeline(const StratumOptions& o) {
  Genus7Report rep;
  const auto t0 = Clock::now();
  auto log = [&](const std::string& m) {
    if (o.log) o.log(m);
  };
  const OgPlus& og = OgPlus::get();
  std::vector<std::uint16_t> words(og.size());
  for (std::size_t k = 0; k < og.size(); ++k) words[k] = og.spinor(k);

  auto so = so_generators(o.seed);
  rep.timings.emplace_back("group", since(t0));
  const auto t1 = Clock::now();
  TreeOptions topt;
  topt.seed = o.seed;
  topt.workers = o.workers;
  topt.log = o.log;
  auto oracle = std::make_shared<OgOracle>(o.og);
  OrbitTree tree(so.group, og.size(), [oracle](std::span<const Point> t) { return (*oracle)(t); }, topt);
  tree.extend_to(6);
  rep.timings.emplace_back("tree", since(t1));
  const auto greens = tree.green_nodes(6);
  rep.greens = greens.size();
  rep.stats["tree-nodes"] = tree.node_count();
  log("g7-generic: " + std::to_string(greens.size()) + " representatives at depth 6");
  if (greens.size() != 494) {
    rep.ok = false;
    rep.failure = "tree: expected 494 representatives, found " + std::to_string(greens.size());
    return rep;
  }

  rep.span_property = true;
  struct Rep {
    Echelon span;
    std::vector<std::uint16_t> extra;  // points of OG+ in the span beyond the six
  };
  std::vector<Rep> reps(greens.size());
  for (std::size_t g = 0; g < greens.size(); ++g) {
    for (auto p : greens[g].label) reps[g].span.add(words[p]);
    const int dim = static_cast<int>(reps[g].span.rows.size()) - 1;
    ++rep.span_dimensions[dim];
    if (dim != 4 && dim != 5) rep.span_property = false;
    for (std::size_t k = 0; k < words.size(); ++k)
      if (!reps[g].span.reduce(words[k]) &&
          std::find(greens[g].label.begin(), greens[g].label.end(), static_cast<Point>(k)) == greens[g].label.end())
        reps[g].extra.push_back(words[k]);
  }
  if (!rep.span_property) {
    rep.ok = false;
    rep.failure = "span-property: a representative spans neither a 4-plane nor a 5-plane";
    return rep;
  }

  const int max_ext = std::min(o.max_extension > 0 ? o.max_extension : 5, 7);
  const auto t2 = Clock::now();
  struct Out {
    std::vector<Plane> planes;
    std::map<std::string, std::uint64_t> stats;
  };
  std::vector<Out> outs(greens.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex em;
  auto body = [&](std::size_t g) {
    Out& out = outs[g];
    const Rep& r = reps[g];
    const auto dim = r.span.rows.size() - 1;
    // residues of the other points modulo the span
    std::unordered_map<std::uint64_t, int> hits;
    for (std::size_t k = 0; k < words.size(); ++k) {
      const auto x = r.span.reduce(words[k]);
      if (x) ++hits[x];
    }
    auto clean = [&](std::uint64_t x) { return !hits.count(x); };
    auto residues = [&](const Echelon& e) {
      std::vector<std::uint64_t> out;
      for (std::uint64_t x = 1; x < 65536; ++x)
        if (e.reduce(x) == x) out.push_back(x);
      return out;
    };
    auto plane = [&](std::initializer_list<std::uint64_t> more) {
      Plane p;
      Echelon e = r.span;
      for (auto m : more) e.add(m);
      p.basis = e.rows;
      return p;
    };
    if (dim == 4) {
      // #C = 7 would need a seventh point in the span
      if (!r.extra.empty()) {
        ++out.stats["case1-seventh-point"];
        return;
      }
      ++out.stats["case-4-plane"];
      std::vector<std::uint64_t> good;
      for (auto x : residues(r.span))
        if (clean(x)) good.push_back(x);
      out.stats["clean-5-planes"] += good.size();
      for (std::size_t a = 0; a < good.size(); ++a)
        for (std::size_t b = a + 1; b < good.size(); ++b) {
          const auto c = r.span.reduce(good[a] ^ good[b]);
          if (c > good[b] && clean(c)) out.planes.push_back(plane({good[a], good[b]}));
        }
      return;
    }
    if (r.extra.empty()) {
      ++out.stats["case-5-plane"];
      for (auto x : residues(r.span)) {
        const auto h = hits.find(x);
        const int n = h == hits.end() ? 0 : h->second;
        if (n == 0) {
          out.planes.push_back(plane({x}));
          ++out.stats["six-point-6-planes"];
        } else if (n == 1) {
          out.planes.push_back(plane({x}));
          ++out.stats["seven-point-6-planes"];
        }
      }
      return;
    }
    // 5-plane with a seventh point: it must have the largest multiplicity
    ++out.stats["case-5-plane-seventh-point"];
    if (r.extra.size() != 1) throw IntegrityError("more than seven F_2-points in a 5-plane");
    const auto mr = og_local_multiplicity(r.span.rows, r.extra[0]);
    bool keep = mr.has_value();
    for (auto p : greens[g].label) {
      if (!keep) break;
      const auto mp = og_local_multiplicity(r.span.rows, words[p]);
      keep = mp && *mp <= *mr;
    }
    if (!mr) throw IntegrityError("span meets OG+ in positive dimension");
    if (!keep) {
      ++out.stats["multiplicity-skipped"];
      return;
    }
    for (auto x : residues(r.span))
      if (clean(x)) out.planes.push_back(plane({x}));
  };
  std::vector<std::thread> pool;
  const unsigned workers = std::max(1u, o.workers);
  auto run = [&] {
    for (;;) {
      const auto g = next++;
      if (g >= greens.size()) return;
      try {
        body(g);
      } catch (...) {
        std::lock_guard<std::mutex> lock(em);
        if (!error) error = std::current_exception();
        next = greens.size();
      }
    }
  };
  if (workers == 1)
    run();
  else {
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto& t : pool) t.join();
  }
  if (error) {
    rep.ok = false;
    try {
      std::rethrow_exception(error);
    } catch (const std::exception& e) {
      rep.failure = std::string("hash-join: ") + e.what();
    }
    return rep;
  }
  std::vector<Plane> planes;
  for (auto& out : outs) {
    for (auto& [k, v] : out.stats) rep.stats[k] += v;
    for (auto& p : out.planes) planes.push_back(std::move(p));
  }
  rep.timings.emplace_back("hash-join", since(t2));
  rep.stats["candidate-6-planes"] = planes.size();
  if (rep.stats["case1-seventh-point"]) {
    rep.ok = false;
    rep.failure = "case1: a 4-plane span contains a seventh point";
    return rep;
  }
  log("g7-generic: " + std::to_string(planes.size()) + " candidate 6-planes");

  const auto t3 = Clock::now();
  std::vector<CandidateScheme> cands(planes.size());
  std::vector<std::map<std::string, std::uint64_t>> cstats(planes.size());
  next = 0;
  pool.clear();
  auto count = [&] {
    for (;;) {
      const auto k = next++;
      if (k >= planes.size()) return;
      cands[k] = make_candidate(planes[k], words, max_ext, cstats[k]);
    }
  };
  if (workers == 1)
    count();
  else {
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(count);
    for (auto& t : pool) t.join();
  }
  for (std::size_t k = 0; k < planes.size(); ++k) {
    for (auto& [a, v] : cstats[k]) rep.stats[a] += v;
    if (!cands[k].counts.empty()) rep.candidates.push_back(std::move(cands[k]));
  }
  rep.stats["candidates"] = rep.candidates.size();
  rep.timings.emplace_back("counts", since(t3));
  rep.timings.emplace_back("total", since(t0));
  return rep;
}

}  // namespace olt
