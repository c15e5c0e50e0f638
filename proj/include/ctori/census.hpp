#ifndef CTORI_CENSUS_HPP
#define CTORI_CENSUS_HPP

#include <map>
#include <string>

#include "ctori/lifts.hpp"

namespace ctori {

// Signed counts of Maslov-2 holomorphic discs on T per homotopy class.
// All counts carry sign +1 (the orientation convention under which the
// evaluation maps have positive degree); the tables record multiplicities.
struct CensusTable {
    ConicParams params;
    double alpha = 0.0;  // marked angle of the disc families used
    std::map<HomotopyClass, int> entries;
    int total = 0;
    int hull_lattice_points = 0;
    int mod2_classes = 0;
    std::map<std::string, double> residuals;

    std::string to_json() const;
    std::string to_csv() const;
};

CensusTable disc_census(const ConicParams& p, double alpha = 0.0);

// Number of lattice points in the convex hull of the class triples, by
// exact integer arithmetic (the classes lie in the plane b + d = 1).
int hull_lattice_count(const CensusTable& table);
int hull_lattice_count(const std::vector<HomotopyClass>& classes);

std::map<HomotopyClass, int> mod2_census(const CensusTable& table);

struct DistinguishReport {
    int n1 = 0, n2 = 0;
    int classes1 = 0, classes2 = 0;
    int total1 = 0, total2 = 0;
    int hull1 = 0, hull2 = 0;
    int mod2_1 = 0, mod2_2 = 0;
    bool distinguished = false;
    std::vector<std::string> witnesses;

    std::string to_json() const;
};

DistinguishReport distinguish(int n1, int n2, const ConicParams& base);

} // namespace ctori

#endif
