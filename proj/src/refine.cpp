#include "ptree/refine.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <numeric>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace ptree {

namespace {

using i64 = std::int64_t;

int log2_exact(int b) {
  int j = 0;
  while ((1 << j) < b) ++j;
  return j;
}

bool power_of_two(int b) { return b > 0 && (b & (b - 1)) == 0; }

// 2^e as a rational, e may be negative.
Scalar pow2(int e) {
  if (e >= 0) return Scalar(Integer::pow2(e), Integer(1));
  return Scalar(Integer(1), Integer::pow2(-e));
}

i64 floor_div(i64 a, i64 b) {
  i64 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

void inherit_frame(SimplexCell& c, const SimplexCell& parent) {
  bool any = false;
  for (int e = 0; e < 3; ++e) {
    for (int f = 0; f < 3; ++f) {
      if (!parent.frame_edge(f)) continue;
      if (side(parent.edge(f), c.corner(e)) == 0 && side(parent.edge(f), c.corner((e + 1) % 3)) == 0) {
        c.set_frame_edge(e, true);
        any = true;
      }
    }
  }
  c.set_unbounded(parent.unbounded() && any);
}

Scalar sq_len(const Point& a, const Point& b, const CutMetric& m) {
  Scalar dx = b.x() - a.x(), dy = b.y() - a.y();
  return m.wx * dx * dx + m.wy * dy * dy;
}

Point midpoint(const Point& a, const Point& b) {
  return Point::homogeneous(a.X() * b.W() + b.X() * a.W(), a.Y() * b.W() + b.Y() * a.W(),
                            Integer(2) * a.W() * b.W());
}

i64 ceil_div(i64 a, i64 b) { return (a + b - 1) / b; }

// Line coefficients as 64-bit values with their largest bit length.
struct Small {
  i64 a = 0, b = 0, c = 0;
  int bits = 0;
  bool ok = false;
};

Small small_line(const Line& l) {
  Small s;
  for (const Integer* v : {&l.a(), &l.b(), &l.c()}) {
    if (!v->fits_i64()) return s;
    s.bits = std::max(s.bits, int(v->bit_length()));
  }
  if (s.bits > 62) return s;
  s.a = l.a().to_i64();
  s.b = l.b().to_i64();
  s.c = l.c().to_i64();
  s.ok = true;
  return s;
}

struct SplitChoice {
  bool found = false;
  bool exact = false;  // keeps the piece count at ceil(c/cap)
  i64 dist = 0;
  Scalar len;
  int apex = 0, a = 0, x = 0;
  std::vector<int> sorted, wild;
};

Point cut_dir(const Point& A, const Point& u, const Point& v) { return orient(A, u, v) > 0 ? midpoint(u, v) : v; }

// Endpoint on the opposite edge of the cut from corner apex between u and v (in angular order).
Point cut_end(const SimplexCell& cell, int apex, const Point& u, const Point& v) {
  const Point& A = cell.corner(apex);
  return *intersect(Line::through(A, cut_dir(A, u, v)), cell.edge((apex + 1) % 3));
}

// One cut through a corner separating the points into two nonempty groups.
// Among cuts that keep the piece count at ceil(c/cap) the shortest one under
// the metric wins: random lines meet a cell in proportion to its perimeter.
bool split_once(const SimplexCell& cell, const std::vector<int>& ids, const std::vector<Point>& P, i64 cap,
                const CutMetric& metric, RefineCell& left, RefineCell& right) {
  const i64 c = i64(ids.size());
  const i64 k = ceil_div(c, cap);

  SplitChoice best;
  for (int apex = 0; apex < 3; ++apex) {
    const Point& A = cell.corner(apex);
    const Point& B = cell.corner((apex + 1) % 3);
    const Point& C = cell.corner((apex + 2) % 3);
    std::vector<int> S, wild;
    for (int id : ids) (P[id] == A ? wild : S).push_back(id);
    if (S.size() < 2) continue;
    std::stable_sort(S.begin(), S.end(), [&](int u, int v) { return orient(A, P[u], P[v]) > 0; });
    const int s = int(S.size()), w = int(wild.size());
    // admissible gaps with their wild-point split
    std::vector<int> gap, gx;
    std::vector<char> gexact;
    std::vector<i64> gdist;
    for (int a = 1; a < s; ++a) {
      const Point &u = P[S[a - 1]], &v = P[S[a]];
      if (orient(A, u, v) == 0 && !(orient(A, B, v) > 0 && orient(A, v, C) > 0)) continue;
      int bx = -1;
      bool bexact = false;
      i64 bdist = 0;
      for (int x = 0; x <= w; ++x) {
        i64 L = a + x;
        bool exact = ceil_div(L, cap) + ceil_div(c - L, cap) <= k;
        i64 dist = std::abs(L - c / 2);
        if (bx < 0 || (exact && !bexact) || (exact == bexact && dist < bdist)) {
          bx = x;
          bexact = exact;
          bdist = dist;
        }
      }
      gap.push_back(a);
      gx.push_back(bx);
      gexact.push_back(bexact);
      gdist.push_back(bdist);
    }
    if (gap.empty()) continue;
    bool took = false;
    for (std::size_t g = 0; g < gap.size(); ++g) {
      const bool ex = gexact[g];
      if (best.found) {
        if (best.exact && !ex) continue;
        if (!ex && !best.exact && gdist[g] >= best.dist) continue;
      }
      Scalar len = sq_len(A, cut_end(cell, apex, P[S[gap[g] - 1]], P[S[gap[g]]]), metric);
      bool better = !best.found || (ex && !best.exact) || (!ex && gdist[g] < best.dist) ||
                    (ex && len < best.len);
      if (!better) continue;
      best.found = true;
      best.exact = ex;
      best.dist = gdist[g];
      best.len = len;
      best.apex = apex;
      best.a = gap[g];
      best.x = gx[g];
      took = true;
    }
    if (took) {
      best.sorted = std::move(S);
      best.wild = std::move(wild);
    }
  }
  if (!best.found) return false;

  const Point& A = cell.corner(best.apex);
  const Point& B = cell.corner((best.apex + 1) % 3);
  const Point& C = cell.corner((best.apex + 2) % 3);
  Point X = cut_end(cell, best.apex, P[best.sorted[best.a - 1]], P[best.sorted[best.a]]);
  left.cell = SimplexCell(A, B, X);
  right.cell = SimplexCell(A, X, C);
  inherit_frame(left.cell, cell);
  inherit_frame(right.cell, cell);
  left.points.assign(best.sorted.begin(), best.sorted.begin() + best.a);
  right.points.assign(best.sorted.begin() + best.a, best.sorted.end());
  left.points.insert(left.points.end(), best.wild.begin(), best.wild.begin() + best.x);
  right.points.insert(right.points.end(), best.wild.begin() + best.x, best.wild.end());
  return true;
}

void fan_rec(RefineCell piece, const std::vector<Point>& P, i64 cap, const CutMetric& metric,
             std::vector<RefineCell>& out) {
  if (i64(piece.points.size()) <= cap) {
    if (!piece.points.empty()) {
      std::sort(piece.points.begin(), piece.points.end());
      out.push_back(std::move(piece));
    }
    return;
  }
  RefineCell l, r;
  if (!split_once(piece.cell, piece.points, P, cap, metric, l, r)) {
    // coincident points beyond the cap: nothing separates them
    std::sort(piece.points.begin(), piece.points.end());
    out.push_back(std::move(piece));
    return;
  }
  fan_rec(std::move(l), P, cap, metric, out);
  fan_rec(std::move(r), P, cap, metric, out);
}

}  // namespace

void ExponentSum::add(int e) {
  if (e >= int(count_.size())) count_.resize(e + 1, 0);
  ++count_[e];
  ++entries_;
}

void ExponentSum::remove(int e) {
  if (e >= int(count_.size()) || count_[e] == 0) throw Error("exponent bookkeeping underflow");
  --count_[e];
  --entries_;
}

int ExponentSum::msb() const {
  if (entries_ == 0) return INT_MIN;
  std::int64_t carry = 0;
  int top = INT_MIN;
  for (int e = 0; e < int(count_.size()); ++e) {
    std::int64_t s = count_[e] + carry;
    if (s & 1) top = e;
    carry = s >> 1;
  }
  int e = int(count_.size());
  while (carry > 0) {
    if (carry & 1) top = e;
    carry >>= 1;
    ++e;
  }
  return top;
}

BigInt ExponentSum::value() const {
  BigInt v = 0;
  for (int e = 0; e < int(count_.size()); ++e)
    if (count_[e]) v += BigInt(count_[e]) << e;
  return v;
}

ExponentTable::ExponentTable(int b) : b_(b), j_(log2_exact(b)), pow_(1), table_{0} {}

int ExponentTable::operator()(int lambda) {
  while (int(table_.size()) <= lambda) {
    pow_ *= (b_ + 1);
    int l = int(table_.size());
    table_.push_back(int(boost::multiprecision::msb(pow_)) + 1 - j_ * l);
  }
  return table_[lambda];
}

std::pair<int, int> select_cell(const std::vector<CellSelectInput>& cells, int i, const RefineConfig& cfg) {
  const i64 p = cfg.beta.num().to_i64(), q = cfg.beta.den().to_i64();
  const i64 j = log2_exact(cfg.b);
  auto in_s1 = [&](const CellSelectInput& c) {
    if (c.IF == kMinusInf) return false;
    if (c.IE == kMinusInf) return true;
    return (q - p) * j + (q + p) * i64(c.IF) >= 2 * (q + p) * i64(c.IE);
  };
  int s1 = 0;
  for (auto& c : cells) s1 += in_s1(c);
  const bool use_s1 = 2 * s1 >= i;
  const CellSelectInput* best = nullptr;
  for (auto& c : cells) {
    if (in_s1(c) != use_s1) continue;
    int key = use_s1 ? c.IF : c.IE, bkey = best ? (use_s1 ? best->IF : best->IE) : 0;
    if (!best || key < bkey || (key == bkey && c.id < best->id)) best = &c;
  }
  if (!best) throw Error("select_cell: no unprocessed cell");
  return {best->id, s1};
}

RiChoice compute_ri(int IE, int IF, const RefineConfig& cfg) {
  if (IE == kMinusInf) return {Scalar(1), '-'};
  const i64 p = cfg.beta.num().to_i64(), q = cfg.beta.den().to_i64();
  const i64 j = log2_exact(cfg.b);
  bool capped = IF == kMinusInf || (2 * i64(IE) - IF) * (q + p) > (q - p) * j;
  i64 e = capped ? floor_div(j * q, q + p) : floor_div(2 * i64(IE) - IF + j, 2);
  Scalar r = cfg.c_cut * pow2(int(e));
  if (r < Scalar(1)) r = Scalar(1);
  return {r, capped ? 'A' : 'B'};
}

CutMetric CutMetric::of(const std::vector<Point>& P, const std::vector<int>& ids) {
  CutMetric m;
  if (ids.size() < 2) return m;
  double lo[2] = {P[ids[0]].x().to_double(), P[ids[0]].y().to_double()}, hi[2] = {lo[0], lo[1]};
  for (int id : ids) {
    double v[2] = {P[id].x().to_double(), P[id].y().to_double()};
    for (int a = 0; a < 2; ++a) {
      lo[a] = std::min(lo[a], v[a]);
      hi[a] = std::max(hi[a], v[a]);
    }
  }
  int e[2];
  for (int a = 0; a < 2; ++a) {
    double ext = hi[a] - lo[a];
    e[a] = ext > 0 && std::isfinite(ext) ? std::clamp(int(std::lround(std::log2(ext))), -512, 512) : 0;
  }
  // weights 1/ext^2 up to a common factor
  m.wx = pow2(2 * (e[1] - std::min(e[0], e[1])));
  m.wy = pow2(2 * (e[0] - std::min(e[0], e[1])));
  return m;
}

std::vector<RefineCell> fan_split(const SimplexCell& cell, const std::vector<int>& ids,
                                  const std::vector<Point>& P, std::int64_t cap, const CutMetric& metric) {
  std::vector<RefineCell> out;
  fan_rec(RefineCell{cell, ids}, P, std::max<i64>(cap, 1), metric, out);
  return out;
}

namespace {

class Engine {
 public:
  Engine(const std::vector<Point>& P, const std::vector<Line>& H, const std::vector<RefineCell>& cells,
         const RefineConfig& cfg, const RefineOptions& opt)
      : P_(P), H_(H), cells_(cells), cfg_(cfg), opt_(opt), table_(cfg.b) {}

  RefineResult run();

 private:
  struct Incidence {
    int other, cell;
  };

  void validate();
  void setup();
  void process(int c, int i, int s1, RefineResult& res);
  void audit(RefineResult& res);
  int vexp(int h1, int h2) { return table_(lambda_[h1] + lambda_[h2]); }

  const std::vector<Point>& P_;
  const std::vector<Line>& H_;
  const std::vector<RefineCell>& cells_;
  const RefineConfig& cfg_;
  const RefineOptions& opt_;
  ExponentTable table_;

  i64 cap_ = 1;
  CutMetric metric_;
  std::vector<std::vector<int>> cross_;       // per input cell
  std::vector<std::vector<int>> line_cells_;  // per line
  std::vector<std::vector<Incidence>> vl_;    // per line, assigned vertices
  std::vector<std::vector<std::pair<int, int>>> cell_vertices_;
  std::vector<int> lambda_;
  std::vector<ExponentSum> E_, F_;
  std::vector<char> done_;
};

void Engine::validate() {
  if (cfg_.b < 4 || !power_of_two(cfg_.b)) throw InputError("refine: b must be a power of two >= 4");
  if (cfg_.beta.sign() <= 0 || !(cfg_.beta < Scalar(1))) throw InputError("refine: beta must lie in (0, 1)");
  if (cfg_.c_cut.sign() <= 0) throw InputError("refine: c_cut must be positive");
  if (cells_.empty()) throw InputError("refine: no cells");
  for (std::size_t c = 0; c < cells_.size(); ++c) {
    for (int id : cells_[c].points) {
      if (id < 0 || id >= int(P_.size()))
        throw InputError("refine: cell " + std::to_string(c) + " has an invalid point id");
      if (!cells_[c].cell.contains(P_[id]))
        throw InputError("refine: cell " + std::to_string(c) + " does not contain point " + std::to_string(id));
    }
  }
}

void Engine::setup() {
  const int t = int(cells_.size()), m = int(H_.size());
  i64 n = 0;
  for (auto& c : cells_) n += i64(c.points.size());
  i64 tn = opt_.t_nominal > 0 ? opt_.t_nominal : t;
  cap_ = std::max<i64>(1, ceil_div(2 * n, i64(cfg_.b) * tn));
  std::vector<int> all;
  for (auto& c : cells_) all.insert(all.end(), c.points.begin(), c.points.end());
  metric_ = CutMetric::of(P_, all);
  cross_.assign(t, {});
  line_cells_.assign(m, {});
  for (int c = 0; c < t; ++c)
    for (int h = 0; h < m; ++h)
      if (cells_[c].cell.crosses(H_[h])) {
        cross_[c].push_back(h);
        line_cells_[h].push_back(c);
      }
  // a vertex belongs to the first cell that contains it and is crossed by both lines
  vl_.assign(m, {});
  cell_vertices_.assign(t, {});
  std::vector<Small> sl(m);
  int line_bits = 0;
  bool lines_ok = true;
  for (int h = 0; h < m; ++h) {
    sl[h] = small_line(H_[h]);
    lines_ok = lines_ok && sl[h].ok;
    line_bits = std::max(line_bits, sl[h].bits);
  }
  const bool dense = m <= 8192;
  std::vector<bool> taken_bits(dense ? std::size_t(m) * std::size_t(m) : 0);
  std::unordered_set<std::uint64_t> taken;
  auto mark = [&](int a, int b) {
    if (dense) {
      std::size_t k = std::size_t(a) * std::size_t(m) + std::size_t(b);
      if (taken_bits[k]) return false;
      taken_bits[k] = true;
      return true;
    }
    return taken.insert((std::uint64_t(a) << 32) | std::uint32_t(b)).second;
  };
  auto is_taken = [&](int a, int b) {
    if (dense) return bool(taken_bits[std::size_t(a) * std::size_t(m) + std::size_t(b)]);
    return taken.count((std::uint64_t(a) << 32) | std::uint32_t(b)) > 0;
  };
  for (int c = 0; c < t; ++c) {
    const auto& L = cross_[c];
    const SimplexCell& cell = cells_[c].cell;
    Small edge[3];
    // |X|, |Y|, |W| < 2^(2 line_bits + 1); the edge test adds edge bits plus 2
    bool fast = lines_ok;
    for (int e = 0; e < 3; ++e) {
      edge[e] = small_line(cell.edge(e));
      fast = fast && edge[e].ok && 2 * line_bits + edge[e].bits + 3 <= 126;
    }
    for (std::size_t a = 0; a < L.size(); ++a)
      for (std::size_t b = a + 1; b < L.size(); ++b) {
        if (is_taken(L[a], L[b])) continue;
        const Small &p = sl[L[a]], &q = sl[L[b]];
        bool inside;
        if (fast) {
          i128 W = i128(p.a) * q.b - i128(q.a) * p.b;
          if (W == 0) continue;
          i128 X = i128(p.b) * q.c - i128(q.b) * p.c;
          i128 Y = i128(p.c) * q.a - i128(q.c) * p.a;
          inside = true;
          for (int e = 0; e < 3 && inside; ++e) {
            i128 v = i128(edge[e].a) * X + i128(edge[e].b) * Y + i128(edge[e].c) * W;
            int sg = (v > 0) - (v < 0);
            if (W < 0) sg = -sg;
            inside = sg * cell.inside(e) >= 0;
          }
        } else {
          auto x = intersect(H_[L[a]], H_[L[b]]);
          if (!x) continue;
          inside = cell.contains(*x);
        }
        if (!inside) continue;
        mark(L[a], L[b]);
        vl_[L[a]].push_back({L[b], c});
        vl_[L[b]].push_back({L[a], c});
        cell_vertices_[c].push_back({L[a], L[b]});
      }
  }
  lambda_.assign(m, 0);
  E_.assign(t, {});
  F_.assign(t, {});
  for (int c = 0; c < t; ++c) {
    for (std::size_t k = 0; k < cross_[c].size(); ++k) E_[c].add(0);
    for (std::size_t k = 0; k < cell_vertices_[c].size(); ++k) F_[c].add(0);
  }
  done_.assign(t, 0);
}

void Engine::process(int c, int i, int s1, RefineResult& res) {
  const RefineCell& in = cells_[c];
  const int IE = E_[c].empty() ? kMinusInf : E_[c].msb();
  const int IF = F_[c].empty() ? kMinusInf : F_[c].msb();
  RiChoice ri = compute_ri(IE, IF, cfg_);

  Cutting cut;
  if (cross_[c].empty()) {
    cut.parent = in.cell;
    cut.cells = {in.cell};
    cut.crossing = {{}};
  } else {
    WeightedLineSet W;
    for (int h : cross_[c]) {
      W.lines.push_back(H_[h]);
      W.exponents.push_back(table_(lambda_[h]));
    }
    Scalar used;
    cut = cut_weighted_capped(W, in.cell, Scalar(4) * ri.r, std::size_t(std::max(1, cfg_.b / 4)), &used);
    if (opt_.on_cutting) opt_.on_cutting(cut, W, used);
  }
  res.cutting_cells += i64(cut.cells.size());

  std::vector<std::vector<int>> bucket(cut.cells.size());
  for (int id : in.points) {
    std::size_t k = 0;
    while (k < cut.cells.size() && !cut.cells[k].contains(P_[id])) ++k;
    if (k == cut.cells.size()) throw Error("refine: cell " + std::to_string(c) + " lost point " + std::to_string(id));
    bucket[k].push_back(id);
  }
  std::size_t first = res.subcells.size();
  for (std::size_t k = 0; k < cut.cells.size(); ++k) {
    if (bucket[k].empty()) continue;
    for (RefineCell& s : fan_split(cut.cells[k], bucket[k], P_, cap_, metric_)) {
      res.subcells.push_back(std::move(s));
      res.parent.push_back(c);
    }
  }
  done_[c] = 1;

  // cut lines cross only subcells of this cell; H_[h] not crossing it adds nothing
  for (int h : cross_[c]) {
    int cnt = 0;
    for (std::size_t s = first; s < res.subcells.size(); ++s) cnt += res.subcells[s].cell.crosses(H_[h]);
    if (cnt == 0) continue;
    int old_l = lambda_[h], new_l = old_l + cnt;
    int old_i = table_(old_l), new_i = table_(new_l);
    for (int d : line_cells_[h])
      if (!done_[d] && old_i != new_i) {
        E_[d].remove(old_i);
        E_[d].add(new_i);
      }
    for (const Incidence& v : vl_[h]) {
      if (done_[v.cell]) continue;
      int o = table_(old_l + lambda_[v.other]), nw = table_(new_l + lambda_[v.other]);
      if (o == nw) continue;
      F_[v.cell].remove(o);
      F_[v.cell].add(nw);
    }
    lambda_[h] = new_l;
  }

  if (opt_.trace) {
    std::ostringstream os;
    os << i << ", " << c << ", " << s1 << ", " << ri.branch << ", " << ri.r.str() << ", "
       << (res.subcells.size() - first);
    res.trace.push_back(os.str());
  }
}

// From-scratch recomputation of lambda, W' and N' for every unprocessed cell.
void Engine::audit(RefineResult& res) {
  const int m = int(H_.size()), t = int(cells_.size());
  std::vector<int> lam(m, 0);
  for (int h = 0; h < m; ++h)
    for (auto& s : res.subcells) lam[h] += s.cell.crosses(H_[h]);
  auto I = [&](int l) {
    // ceil(l * log2(1 + 1/b)) by direct comparison of powers
    if (l == 0) return 0;
    BigInt num = 1, den = 1;
    for (int k = 0; k < l; ++k) {
      num *= cfg_.b + 1;
      den *= cfg_.b;
    }
    int e = 0;
    while ((den << e) < num) ++e;
    return e;
  };
  auto fail = [&](const std::string& msg) {
    if (res.audit_ok) {
      res.audit_ok = false;
      res.audit_message = msg;
    }
  };
  for (int h = 0; h < m; ++h)
    if (lam[h] != lambda_[h]) fail("lambda mismatch on line " + std::to_string(h));
  std::unordered_map<std::uint64_t, int> owner;
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) {
      auto x = intersect(H_[a], H_[b]);
      if (!x) continue;
      for (int c = 0; c < t; ++c) {
        const SimplexCell& cell = cells_[c].cell;
        if (cell.crosses(H_[a]) && cell.crosses(H_[b]) && cell.contains(*x)) {
          owner[(std::uint64_t(a) << 32) | std::uint32_t(b)] = c;
          break;
        }
      }
    }
  std::vector<BigInt> W(t, 0), N(t, 0);
  for (int c = 0; c < t; ++c) {
    if (done_[c]) continue;
    for (int h = 0; h < m; ++h)
      if (cells_[c].cell.crosses(H_[h])) W[c] += BigInt(1) << I(lam[h]);
  }
  for (auto& [key, c] : owner) {
    if (done_[c]) continue;
    int a = int(key >> 32), b = int(key & 0xffffffffu);
    N[c] += BigInt(1) << I(lam[a] + lam[b]);
  }
  for (int c = 0; c < t; ++c) {
    if (done_[c]) continue;
    if (W[c] != E_[c].value()) fail("W' mismatch on cell " + std::to_string(c));
    if (N[c] != F_[c].value()) fail("N' mismatch on cell " + std::to_string(c));
  }
}

RefineResult Engine::run() {
  validate();
  setup();
  RefineResult res;
  const int t = int(cells_.size());
  i64 tn = opt_.t_nominal > 0 ? opt_.t_nominal : t;
  res.point_cap = cap_;
  res.budget = i64(cfg_.b) * tn;
  if (opt_.audit) {
    audit(res);
    ++res.audits;
  }
  for (int i = t; i >= 1; --i) {
    std::vector<CellSelectInput> in;
    for (int c = 0; c < t; ++c)
      if (!done_[c])
        in.push_back({c, E_[c].empty() ? kMinusInf : E_[c].msb(), F_[c].empty() ? kMinusInf : F_[c].msb()});
    auto [c, s1] = select_cell(in, i, cfg_);
    res.order.push_back(c);
    process(c, i, s1, res);
    if (opt_.audit) {
      audit(res);
      ++res.audits;
    }
  }
  // children grouped by input cell
  std::vector<std::size_t> idx(res.subcells.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return res.parent[a] < res.parent[b]; });
  std::vector<RefineCell> sub;
  std::vector<int> par;
  for (std::size_t k : idx) {
    sub.push_back(std::move(res.subcells[k]));
    par.push_back(res.parent[k]);
  }
  res.subcells = std::move(sub);
  res.parent = std::move(par);
  res.lambda = lambda_;
  return res;
}

}  // namespace

RefineResult refine(const std::vector<Point>& P, const std::vector<Line>& H, const std::vector<RefineCell>& cells,
                    const RefineConfig& cfg, const RefineOptions& opt) {
  Engine e(P, H, cells, cfg, opt);
  return e.run();
}

}  // namespace ptree
