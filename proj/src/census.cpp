#include "ctori/census.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

namespace ctori {

namespace {

using Point2 = std::array<long long, 2>;

long long cross(const Point2& o, const Point2& a, const Point2& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Andrew monotone chain, counterclockwise, no collinear points kept.
std::vector<Point2> convex_hull(std::vector<Point2> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() <= 2) return pts;
    std::vector<Point2> hull(2 * pts.size());
    size_t k = 0;
    for (size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    size_t lower = k + 1;
    for (size_t i = pts.size() - 1; i-- > 0;) {
        while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

bool in_hull(const std::vector<Point2>& hull, const Point2& q) {
    for (size_t i = 0; i < hull.size(); ++i)
        if (cross(hull[i], hull[(i + 1) % hull.size()], q) < 0) return false;
    return true;
}

bool collinear(const std::vector<Point2>& pts) {
    for (size_t i = 2; i < pts.size(); ++i)
        if (cross(pts[0], pts[1], pts[i]) != 0) return false;
    return true;
}

} // namespace

int hull_lattice_count(const std::vector<HomotopyClass>& classes) {
    if (classes.empty()) throw NumericalError("hull_lattice_count: empty class set");
    std::vector<Point2> pts;
    for (const auto& c : classes) {
        if (c.b + c.d != 1)
            throw NumericalError("hull_lattice_count: class outside the plane b + d = 1");
        pts.push_back({c.a, c.b});
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() == 1) return 1;
    if (pts.size() == 2 || collinear(pts)) {
        // extremal pair of the collinear set
        auto [lo, hi] = std::minmax_element(pts.begin(), pts.end());
        long long dx = std::llabs((*hi)[0] - (*lo)[0]);
        long long dy = std::llabs((*hi)[1] - (*lo)[1]);
        return int(std::gcd(dx, dy)) + 1;
    }
    auto hull = convex_hull(pts);
    long long x0 = pts[0][0], x1 = x0, y0 = pts[0][1], y1 = y0;
    for (const auto& q : pts) {
        x0 = std::min(x0, q[0]); x1 = std::max(x1, q[0]);
        y0 = std::min(y0, q[1]); y1 = std::max(y1, q[1]);
    }
    int count = 0;
    for (long long x = x0; x <= x1; ++x)
        for (long long y = y0; y <= y1; ++y)
            if (in_hull(hull, {x, y})) ++count;
    return count;
}

int hull_lattice_count(const CensusTable& table) {
    std::vector<HomotopyClass> classes;
    for (const auto& [cls, count] : table.entries)
        if (count != 0) classes.push_back(cls);
    return hull_lattice_count(classes);
}

std::map<HomotopyClass, int> mod2_census(const CensusTable& table) {
    std::map<HomotopyClass, int> out;
    for (const auto& [cls, count] : table.entries) out[cls] = count & 1;
    return out;
}

CensusTable disc_census(const ConicParams& p, double alpha) {
    p.validate();
    if (p.n > 20) throw NumericalError("disc_census: 2^n lift enumeration infeasible for n > 20");

    CensusTable table;
    table.params = p;
    table.alpha = alpha;

    DiscMap u = disc_u_alpha(alpha, p);
    DiscMap v = disc_v_alpha(alpha, p);
    auto lifts_u = enumerate_lifts(u, p);
    auto lifts_v = enumerate_lifts(v, p);

    double max_xy = 0.0, max_bdry = 0.0;
    auto absorb = [&](const std::vector<Lift>& lifts, const char* family) {
        for (const Lift& l : lifts) {
            max_xy = std::max(max_xy, l.residual_xy);
            max_bdry = std::max(max_bdry, l.residual_boundary);
            if (l.residual_xy > 1e-10)
                throw NumericalError(std::string("disc_census: xy = h(u) residual failed for family ") + family);
            if (l.residual_boundary > 1e-10)
                throw NumericalError(std::string("disc_census: |x| = |y| boundary residual failed for family ") + family);
            if (maslov_index(l.disc) != 2)
                throw NumericalError(std::string("disc_census: lift with Maslov index != 2 in family ") + family);
            table.entries[l.cls] += 1;
        }
    };
    absorb(lifts_u, "u");
    absorb(lifts_v, "v");

    if (lifts_v.size() != 1)
        throw NumericalError("disc_census: family v must contribute a single lift class");

    table.total = 0;
    for (const auto& [cls, count] : table.entries) table.total += count;
    table.hull_lattice_points = hull_lattice_count(table);
    int odd = 0;
    for (const auto& [cls, bit] : mod2_census(table)) odd += bit;
    table.mod2_classes = odd;
    table.residuals["max_xy_residual"] = max_xy;
    table.residuals["max_boundary_residual"] = max_bdry;
    return table;
}

std::string CensusTable::to_json() const {
    nlohmann::json j;
    j["params"] = {{"n", params.n}, {"c", params.c}, {"kappa", params.kappa}};
    j["alpha"] = alpha;
    j["classes"] = nlohmann::json::array();
    for (const auto& [cls, count] : entries)
        j["classes"].push_back({{"class", {cls.a, cls.b, cls.d}}, {"count", count}});
    j["total"] = total;
    j["hull_points"] = hull_lattice_points;
    j["mod2_classes"] = mod2_classes;
    j["sign_convention"] = "all counts +1 per lift; orientation signs not re-derived";
    j["residuals"] = residuals;
    return j.dump(2);
}

std::string CensusTable::to_csv() const {
    std::ostringstream os;
    os << "a,b,d,count\n";
    for (const auto& [cls, count] : entries)
        os << cls.a << "," << cls.b << "," << cls.d << "," << count << "\n";
    return os.str();
}

DistinguishReport distinguish(int n1, int n2, const ConicParams& base) {
    if (n1 == n2) throw NumericalError("distinguish: n1 and n2 must differ");
    ConicParams p1 = base, p2 = base;
    p1.n = n1;
    p2.n = n2;
    CensusTable t1 = disc_census(p1);
    CensusTable t2 = disc_census(p2);

    DistinguishReport r;
    r.n1 = n1;
    r.n2 = n2;
    r.classes1 = int(t1.entries.size());
    r.classes2 = int(t2.entries.size());
    r.total1 = t1.total;
    r.total2 = t2.total;
    r.hull1 = t1.hull_lattice_points;
    r.hull2 = t2.hull_lattice_points;
    r.mod2_1 = t1.mod2_classes;
    r.mod2_2 = t2.mod2_classes;
    if (r.classes1 != r.classes2) r.witnesses.push_back("class_count");
    if (r.total1 != r.total2) r.witnesses.push_back("total_count");
    if (r.hull1 != r.hull2) r.witnesses.push_back("hull_lattice_points");
    if (r.mod2_1 != r.mod2_2) r.witnesses.push_back("mod2_classes");
    r.distinguished = !r.witnesses.empty();
    return r;
}

std::string DistinguishReport::to_json() const {
    nlohmann::json j;
    j["n1"] = n1;
    j["n2"] = n2;
    j["classes"] = {classes1, classes2};
    j["totals"] = {total1, total2};
    j["hull_points"] = {hull1, hull2};
    j["mod2_classes"] = {mod2_1, mod2_2};
    j["verdict"] = distinguished ? "distinguished" : "not distinguished";
    j["witnesses"] = witnesses;
    return j.dump(2);
}

} // namespace ctori
