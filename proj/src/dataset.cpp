#include "ptree/dataset.hpp"

#include <fstream>
#include <sstream>

namespace ptree {

namespace {

std::vector<std::string> tokens_of(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line.substr(0, line.find('#')));
  std::string t;
  while (ss >> t) out.push_back(t);
  return out;
}

Point point_at(const std::vector<std::string>& t, std::size_t i) {
  return Point(Scalar::parse(t[i]), Scalar::parse(t[i + 1]));
}

void expect(const std::vector<std::string>& t, std::size_t n, int lineno) {
  if (t.size() != n)
    throw InputError("line " + std::to_string(lineno) + ": record '" + t[0] + "' expects " +
                     std::to_string(n - 1) + " fields");
}

std::string pt(const Point& p) { return p.x().str() + " " + p.y().str(); }

int parse_side(const std::string& s, int lineno) {
  if (s == "1" || s == "+1" || s == "+") return 1;
  if (s == "-1" || s == "-") return -1;
  throw InputError("line " + std::to_string(lineno) + ": bad halfplane side '" + s + "'");
}

std::ifstream open_in(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InputError("cannot open " + path);
  return f;
}

}  // namespace

Line line_from_coeffs(const Scalar& a, const Scalar& b, const Scalar& c, int* side) {
  Integer l = a.den() * b.den() * c.den();
  Integer A = Integer::exact_div(a.num() * l, a.den());
  Integer B = Integer::exact_div(b.num() * l, b.den());
  Integer C = Integer::exact_div(c.num() * l, c.den());
  if (A.is_zero() && B.is_zero()) throw InputError("degenerate line coefficients");
  int lead = A.sign() != 0 ? A.sign() : B.sign();
  if (side && lead < 0) *side = -*side;
  return Line(A, B, C);
}

Dataset read_dataset(std::istream& in) {
  Dataset d;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto t = tokens_of(line);
    if (t.empty()) continue;
    try {
      if (t[0] == "P") {
        expect(t, 3, lineno);
        Point p = point_at(t, 1);
        p.id = (std::int64_t)d.points.size();
        d.points.push_back(p);
      } else if (t[0] == "S") {
        expect(t, 5, lineno);
        d.segments.emplace_back(point_at(t, 1), point_at(t, 3), (std::int64_t)d.segments.size());
      } else if (t[0] == "T") {
        expect(t, 7, lineno);
        Triangle tri{point_at(t, 1), point_at(t, 3), point_at(t, 5)};
        if (orient(tri[0], tri[1], tri[2]) == 0)
          throw InputError("degenerate triangle");
        d.triangles.push_back(tri);
      } else {
        throw InputError("unknown record '" + t[0] + "'");
      }
    } catch (const InputError& e) {
      std::string msg = e.what();
      if (msg.rfind("line ", 0) == 0) throw;
      throw InputError("line " + std::to_string(lineno) + ": " + msg);
    }
  }
  return d;
}

void write_dataset(std::ostream& out, const Dataset& d) {
  out << kDatasetHeader << "\n";
  for (const Point& p : d.points) out << "P " << pt(p) << "\n";
  for (const Segment& s : d.segments) out << "S " << pt(s.p) << " " << pt(s.q) << "\n";
  for (const Triangle& t : d.triangles)
    out << "T " << pt(t[0]) << " " << pt(t[1]) << " " << pt(t[2]) << "\n";
}

Dataset load_dataset(const std::string& path) {
  auto f = open_in(path);
  return read_dataset(f);
}

void save_dataset(const std::string& path, const Dataset& d) {
  std::ofstream f(path);
  if (!f) throw InputError("cannot write " + path);
  write_dataset(f, d);
}

std::vector<Query> read_queries(std::istream& in) {
  std::vector<Query> qs;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto t = tokens_of(line);
    if (t.empty()) continue;
    Query q;
    q.id = (std::int64_t)qs.size();
    try {
      if (t[0] == "T") {
        expect(t, 7, lineno);
        q.kind = QueryKind::Triangle;
        q.tri = {point_at(t, 1), point_at(t, 3), point_at(t, 5)};
      } else if (t[0] == "H") {
        expect(t, 5, lineno);
        q.kind = QueryKind::Halfplane;
        q.side = parse_side(t[4], lineno);
        q.line = line_from_coeffs(Scalar::parse(t[1]), Scalar::parse(t[2]), Scalar::parse(t[3]),
                                  &q.side);
      } else if (t[0] == "Q") {
        expect(t, 3, lineno);
        q.kind = QueryKind::Point;
        q.point = point_at(t, 1);
      } else if (t[0] == "L") {
        expect(t, 4, lineno);
        q.kind = QueryKind::Line;
        q.line = line_from_coeffs(Scalar::parse(t[1]), Scalar::parse(t[2]), Scalar::parse(t[3]));
      } else if (t[0] == "G") {
        expect(t, 5, lineno);
        q.kind = QueryKind::Segment;
        q.segment = Segment(point_at(t, 1), point_at(t, 3), q.id);
      } else if (t[0] == "R") {
        expect(t, 5, lineno);
        q.kind = QueryKind::Ray;
        Scalar dx = Scalar::parse(t[3]), dy = Scalar::parse(t[4]);
        Integer l = dx.den() * dy.den();
        q.ray = Ray(point_at(t, 1), Integer::exact_div(dx.num() * l, dx.den()),
                    Integer::exact_div(dy.num() * l, dy.den()), q.id);
      } else {
        throw InputError("unknown query record '" + t[0] + "'");
      }
    } catch (const InputError& e) {
      std::string msg = e.what();
      if (msg.rfind("line ", 0) == 0) throw;
      throw InputError("line " + std::to_string(lineno) + ": " + msg);
    }
    qs.push_back(std::move(q));
  }
  return qs;
}

void write_queries(std::ostream& out, const std::vector<Query>& qs) {
  out << kQueryHeader << "\n";
  for (const Query& q : qs) {
    switch (q.kind) {
      case QueryKind::Triangle:
        out << "T " << pt(q.tri[0]) << " " << pt(q.tri[1]) << " " << pt(q.tri[2]) << "\n";
        break;
      case QueryKind::Halfplane:
        out << "H " << q.line.str() << " " << q.side << "\n";
        break;
      case QueryKind::Point:
        out << "Q " << pt(q.point) << "\n";
        break;
      case QueryKind::Line:
        out << "L " << q.line.str() << "\n";
        break;
      case QueryKind::Segment:
        out << "G " << pt(q.segment.p) << " " << pt(q.segment.q) << "\n";
        break;
      case QueryKind::Ray:
        out << "R " << pt(q.ray.origin) << " " << q.ray.dx.str() << " " << q.ray.dy.str() << "\n";
        break;
    }
  }
}

std::vector<Query> load_queries(const std::string& path) {
  auto f = open_in(path);
  return read_queries(f);
}

void save_queries(const std::string& path, const std::vector<Query>& qs) {
  std::ofstream f(path);
  if (!f) throw InputError("cannot write " + path);
  write_queries(f, qs);
}

}  // namespace ptree
