#pragma once

#include <string>
#include <vector>

namespace bfr::designs {

// Points are 1-based; each block is a sorted point list.
struct BlockDesign {
    int v = 0;
    int kappa = 0;
    int lambda = 0;
    std::vector<std::vector<int>> blocks;

    int b() const { return int(blocks.size()); }
    // Replication from the design formula r = lambda(v-1)/(kappa-1); 0 when not integral.
    int r() const;
};

struct ResolvableDesign {
    BlockDesign design;
    std::vector<std::vector<int>> classes;  // block indices per parallel class
};

// All kappa_base-subsets of v_base points, repeated `reps` times on disjoint
// labels: group g uses points g*v_base+1 .. (g+1)*v_base. Row i concatenates
// the i-th subset of every group.
struct DcbdDesign {
    int v_base = 0, kappa_base = 0, reps = 0;
    std::vector<std::vector<int>> blocks;

    int v() const { return v_base * reps; }
    int kappa() const { return kappa_base * reps; }
    int b() const { return int(blocks.size()); }
    // Points of row `row` that belong to group g.
    std::vector<int> group_points(int row, int g) const;
};

BlockDesign projective_plane(int p);
DcbdDesign dcbd(int v_base, int kappa_base, int reps);
ResolvableDesign rbibd_affine(int p);

struct DesignReport {
    bool ok = true;
    std::vector<std::string> violations;
    void fail(std::string what) {
        ok = false;
        violations.push_back(std::move(what));
    }
};

// projective: additionally require every two blocks to meet in one point.
DesignReport verify_design(const BlockDesign& d, bool projective = false);
DesignReport verify_design(const ResolvableDesign& d);
DesignReport verify_design(const DcbdDesign& d);

bool is_prime(int p);

// Line format: header "v kappa lambda", one block per line, '%' between
// parallel classes. Non-balanced designs (DCBD) write lambda = 0.
std::string to_text(const BlockDesign& d);
std::string to_text(const ResolvableDesign& d);
std::string to_text(const DcbdDesign& d);
ResolvableDesign parse_design(const std::string& text);

}  // namespace bfr::designs
