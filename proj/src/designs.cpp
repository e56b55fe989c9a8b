#include "bfr/designs.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <sstream>

#include "bfr/combinatorics.hpp"
#include "bfr/errors.hpp"

namespace bfr::designs {

int BlockDesign::r() const {
    if (kappa < 2) return 0;
    int num = lambda * (v - 1);
    return num % (kappa - 1) ? 0 : num / (kappa - 1);
}

std::vector<int> DcbdDesign::group_points(int row, int g) const {
    auto first = blocks.at(row).begin() + g * kappa_base;
    return {first, first + kappa_base};
}

bool is_prime(int p) {
    if (p < 2) return false;
    for (int q = 2; q * q <= p; ++q)
        if (p % q == 0) return false;
    return true;
}

namespace {

void require_prime(int p) {
    if (!is_prime(p)) throw ParamError("prime order", "p=" + std::to_string(p) + " is not prime");
}

}  // namespace

// Points are the normalized nonzero vectors of GF(p)^3 (first nonzero entry
// 1), labelled by increasing base-p value; lines are their orthogonal planes.
BlockDesign projective_plane(int p) {
    require_prime(p);
    std::vector<std::array<int, 3>> pts;
    for (int val = 1; val < p * p * p; ++val) {
        std::array<int, 3> x{val / (p * p), (val / p) % p, val % p};
        int lead = x[0] ? x[0] : x[1] ? x[1] : x[2];
        if (lead == 1) pts.push_back(x);
    }
    BlockDesign d;
    d.v = int(pts.size());
    d.kappa = p + 1;
    d.lambda = 1;
    for (const auto& u : pts) {
        std::vector<int> line;
        for (int i = 0; i < d.v; ++i) {
            const auto& x = pts[i];
            if ((u[0] * x[0] + u[1] * x[1] + u[2] * x[2]) % p == 0) line.push_back(i + 1);
        }
        d.blocks.push_back(line);
    }
    std::sort(d.blocks.begin(), d.blocks.end());
    return d;
}

// Subsets are ordered by the lexicographic order of their complements, with
// complements containing point 1 moved last: for kappa = v-1 row i omits
// point i+1 and the final row omits point 1.
DcbdDesign dcbd(int v_base, int kappa_base, int reps) {
    if (kappa_base < 1 || kappa_base >= v_base)
        throw ParamError("1 <= kappa < v", "v=" + std::to_string(v_base) + " kappa=" + std::to_string(kappa_base));
    if (reps < 1) throw ParamError("r >= 1", "r=" + std::to_string(reps));
    auto comps = combinations(v_base, v_base - kappa_base);
    std::stable_partition(comps.begin(), comps.end(), [](const std::vector<int>& c) { return c.front() != 0; });
    DcbdDesign d{v_base, kappa_base, reps, {}};
    for (const auto& comp : comps) {
        std::vector<int> row;
        for (int g = 0; g < reps; ++g)
            for (int x = 0; x < v_base; ++x)
                if (!std::binary_search(comp.begin(), comp.end(), x)) row.push_back(g * v_base + x + 1);
        d.blocks.push_back(row);
    }
    return d;
}

// Affine plane over GF(p): point (x, y) has label 1 + p*x + y. Class 0 holds
// the lines x = c, class 1 the lines y = c, class 1+m the lines y = m*x + c.
ResolvableDesign rbibd_affine(int p) {
    require_prime(p);
    ResolvableDesign r;
    r.design.v = p * p;
    r.design.kappa = p;
    r.design.lambda = 1;
    auto label = [p](int x, int y) { return 1 + p * x + y; };
    for (int m = -1; m < p; ++m) {
        std::vector<int> cls;
        for (int c = 0; c < p; ++c) {
            std::vector<int> line;
            for (int t = 0; t < p; ++t) {
                if (m == -1)
                    line.push_back(label(c, t));
                else if (m == 0)
                    line.push_back(label(t, c));
                else
                    line.push_back(label(t, (m * t + c) % p));
            }
            std::sort(line.begin(), line.end());
            cls.push_back(r.design.b());
            r.design.blocks.push_back(line);
        }
        r.classes.push_back(cls);
    }
    return r;
}

DesignReport verify_design(const BlockDesign& d, bool projective) {
    DesignReport rep;
    if (d.v < 1 || d.kappa < 1) rep.fail("v and kappa must be positive");
    std::vector<int> occ(d.v + 1, 0);
    std::map<std::pair<int, int>, int> pairs;
    for (int i = 0; i < d.b(); ++i) {
        const auto& blk = d.blocks[i];
        std::set<int> pts(blk.begin(), blk.end());
        if (int(blk.size()) != d.kappa || int(pts.size()) != d.kappa)
            rep.fail("block " + std::to_string(i + 1) + " does not hold " + std::to_string(d.kappa) + " distinct points");
        for (int x : pts) {
            if (x < 1 || x > d.v) {
                rep.fail("block " + std::to_string(i + 1) + " has point " + std::to_string(x) + " outside 1.." +
                         std::to_string(d.v));
                continue;
            }
            ++occ[x];
            for (int y : pts)
                if (x < y && y <= d.v) ++pairs[{x, y}];
        }
    }
    for (int x = 1; x <= d.v; ++x)
        for (int y = x + 1; y <= d.v; ++y) {
            auto it = pairs.find({x, y});
            int cnt = it == pairs.end() ? 0 : it->second;
            if (cnt != d.lambda)
                rep.fail("pair {" + std::to_string(x) + "," + std::to_string(y) + "} covered " + std::to_string(cnt) +
                         " times, expected " + std::to_string(d.lambda));
        }
    int r = d.r();
    if (d.kappa >= 2 && r == 0) rep.fail("r = lambda(v-1)/(kappa-1) is not integral");
    if (r) {
        for (int x = 1; x <= d.v; ++x)
            if (occ[x] != r)
                rep.fail("point " + std::to_string(x) + " occurs " + std::to_string(occ[x]) + " times, expected r=" +
                         std::to_string(r));
        if ((d.v * r) % d.kappa || d.v * r / d.kappa != d.b())
            rep.fail("b = vr/kappa does not match " + std::to_string(d.b()) + " blocks");
    }
    if (projective)
        for (int i = 0; i < d.b(); ++i)
            for (int j = i + 1; j < d.b(); ++j) {
                std::vector<int> meet;
                std::set_intersection(d.blocks[i].begin(), d.blocks[i].end(), d.blocks[j].begin(), d.blocks[j].end(),
                                      std::back_inserter(meet));
                if (meet.size() != 1)
                    rep.fail("blocks " + std::to_string(i + 1) + " and " + std::to_string(j + 1) + " meet in " +
                             std::to_string(meet.size()) + " points");
            }
    return rep;
}

DesignReport verify_design(const ResolvableDesign& d) {
    DesignReport rep = verify_design(d.design);
    std::vector<int> used(d.design.b(), 0);
    for (std::size_t c = 0; c < d.classes.size(); ++c) {
        std::vector<int> cover(d.design.v + 1, 0);
        for (int bi : d.classes[c]) {
            if (bi < 0 || bi >= d.design.b()) {
                rep.fail("class " + std::to_string(c + 1) + " references missing block");
                continue;
            }
            ++used[bi];
            for (int x : d.design.blocks[bi])
                if (x >= 1 && x <= d.design.v) ++cover[x];
        }
        for (int x = 1; x <= d.design.v; ++x)
            if (cover[x] != 1)
                rep.fail("class " + std::to_string(c + 1) + " covers point " + std::to_string(x) + " " +
                         std::to_string(cover[x]) + " times");
    }
    for (int i = 0; i < d.design.b(); ++i)
        if (used[i] != 1) rep.fail("block " + std::to_string(i + 1) + " is in " + std::to_string(used[i]) + " classes");
    return rep;
}

DesignReport verify_design(const DcbdDesign& d) {
    DesignReport rep;
    if (std::uint64_t(d.b()) != binom(d.v_base, d.kappa_base))
        rep.fail("expected C(" + std::to_string(d.v_base) + "," + std::to_string(d.kappa_base) + ") rows, got " +
                 std::to_string(d.b()));
    for (int g = 0; g < d.reps; ++g) {
        std::set<std::vector<int>> seen;
        for (int i = 0; i < d.b(); ++i) {
            if (int(d.blocks[i].size()) != d.kappa()) {
                rep.fail("row " + std::to_string(i + 1) + " has " + std::to_string(d.blocks[i].size()) + " points");
                return rep;
            }
            auto pts = d.group_points(i, g);
            std::vector<int> local;
            for (int x : pts) {
                int l = x - g * d.v_base;
                if (l < 1 || l > d.v_base)
                    rep.fail("row " + std::to_string(i + 1) + " group " + std::to_string(g + 1) + " has foreign point " +
                             std::to_string(x));
                local.push_back(l);
            }
            std::sort(local.begin(), local.end());
            if (std::adjacent_find(local.begin(), local.end()) != local.end())
                rep.fail("row " + std::to_string(i + 1) + " group " + std::to_string(g + 1) + " repeats a point");
            if (!seen.insert(local).second)
                rep.fail("row " + std::to_string(i + 1) + " group " + std::to_string(g + 1) + " repeats a subset");
        }
    }
    return rep;
}

namespace {

void write_blocks(std::ostringstream& os, const BlockDesign& d, const std::vector<int>& idx) {
    for (int i : idx) {
        const auto& blk = d.blocks[i];
        for (std::size_t j = 0; j < blk.size(); ++j) os << (j ? " " : "") << blk[j];
        os << '\n';
    }
}

}  // namespace

std::string to_text(const BlockDesign& d) {
    std::ostringstream os;
    os << d.v << ' ' << d.kappa << ' ' << d.lambda << '\n';
    std::vector<int> all(d.b());
    for (int i = 0; i < d.b(); ++i) all[i] = i;
    write_blocks(os, d, all);
    return os.str();
}

std::string to_text(const ResolvableDesign& d) {
    std::ostringstream os;
    os << d.design.v << ' ' << d.design.kappa << ' ' << d.design.lambda << '\n';
    for (std::size_t c = 0; c < d.classes.size(); ++c) {
        if (c) os << "%\n";
        write_blocks(os, d.design, d.classes[c]);
    }
    return os.str();
}

std::string to_text(const DcbdDesign& d) {
    BlockDesign flat{d.v(), d.kappa(), 0, d.blocks};
    return to_text(flat);
}

ResolvableDesign parse_design(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    ResolvableDesign r;
    bool header = false;
    std::vector<int> cls;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (line[first] == '%') {
            if (!header) throw FormatError("design: '%' before header");
            r.classes.push_back(cls);
            cls.clear();
            continue;
        }
        std::istringstream ls(line);
        std::vector<int> nums;
        std::string tok;
        while (ls >> tok) {
            try {
                std::size_t used = 0;
                int x = std::stoi(tok, &used);
                if (used != tok.size()) throw std::invalid_argument(tok);
                nums.push_back(x);
            } catch (const std::exception&) {
                throw FormatError("design line " + std::to_string(lineno) + ": bad integer '" + tok + "'");
            }
        }
        if (!header) {
            if (nums.size() != 3) throw FormatError("design header must be 'v kappa lambda'");
            r.design.v = nums[0];
            r.design.kappa = nums[1];
            r.design.lambda = nums[2];
            header = true;
            continue;
        }
        std::sort(nums.begin(), nums.end());
        cls.push_back(r.design.b());
        r.design.blocks.push_back(nums);
    }
    if (!header) throw FormatError("design: empty input");
    if (!r.classes.empty()) r.classes.push_back(cls);
    return r;
}

}  // namespace bfr::designs
