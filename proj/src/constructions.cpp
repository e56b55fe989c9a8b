#include <algorithm>
#include <map>

#include "bfr/bfr.hpp"
#include "bfr/mds.hpp"

namespace bfr::core {

namespace {

std::string sub_str(const codes::RegenParams& s) { return s.to_string(); }

void put_sub(Recipe& r, const codes::RegenParams& s) {
    r["sub_mode"] = codes::mode_name(s.mode);
    r["sub_n"] = std::to_string(s.n);
    r["sub_k"] = std::to_string(s.k);
    r["sub_d"] = std::to_string(s.d);
    r["sub_beta"] = std::to_string(s.beta);
}

std::shared_ptr<const codes::NodeCode> regen_node_code(const codes::RegenParams& sub) {
    sub.validate();
    if (sub.n > 256) throw ParamError("sub-code n <= 256", sub_str(sub));
    return std::make_shared<const codes::NodeCode>(codes::RegenCode(sub).code());
}

void require(bool ok, const char* constraint, const std::string& detail) {
    if (!ok) throw ParamError(constraint, detail);
}

void put_params(Recipe& r, const SystemParams& p) {
    r["n"] = std::to_string(p.n);
    r["b"] = std::to_string(p.b);
    r["M"] = std::to_string(p.M);
    r["k"] = std::to_string(p.k);
    r["rho"] = std::to_string(p.rho);
    r["alpha"] = std::to_string(p.alpha);
    r["d"] = std::to_string(p.d);
    r["sigma"] = std::to_string(p.sigma);
    r["beta"] = std::to_string(p.beta);
}

}  // namespace

std::vector<std::vector<std::vector<Slot>>> design_placement(const std::vector<std::vector<int>>& design_blocks,
                                                             int points, int c, int partition_base) {
    std::vector<int> seen(points + 1, 0);
    std::vector<std::vector<std::vector<Slot>>> place(design_blocks.size(), std::vector<std::vector<Slot>>(c));
    for (std::size_t i = 0; i < design_blocks.size(); ++i)
        for (int pt : design_blocks[i]) {
            if (pt < 1 || pt > points) throw ParamError("design points in 1..v", "point " + std::to_string(pt));
            int j = seen[pt]++;
            for (int t = 0; t < c; ++t) place[i][t].push_back({partition_base + pt - 1, j * c + t});
        }
    return place;
}

BfrCode transpose_code(int n, int k) {
    std::string detail = "n=" + std::to_string(n) + " k=" + std::to_string(k);
    require(n >= 2 && n % 2 == 0, "n even", detail);
    require(k >= 2 && k % 2 == 0, "k even", detail);
    int a = n / 2;
    require(k / 2 <= a, "k/2 <= n/2", detail);
    require(a * a <= 256, "(n/2)^2 <= 256", detail);
    int M = k * a - (k / 2) * (k / 2);

    BfrCode code;
    code.tag = Construction::transpose;
    code.params = {n, 2, M, k, 0, a, a, 1, 1};
    validate_params(code.params);
    code.partitions.push_back({std::make_shared<const codes::NodeCode>(codes::mds_node_code(codes::MdsCode(a * a, M))), 0});
    code.place.assign(2, std::vector<std::vector<Slot>>(a));
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < a; ++j) {
            code.place[0][i].push_back({0, i * a + j});
            code.place[1][j].push_back({0, i * a + j});
        }
    code.recipe["construction"] = "transpose";
    put_params(code.recipe, code.params);
    return code;
}

BfrCode projective_code(int p, const codes::RegenParams& sub) {
    auto design = designs::projective_plane(p);
    int r = p + 1;
    std::string detail = "p=" + std::to_string(p) + " " + sub_str(sub);
    require(sub.n % r == 0, "r | n~", detail);
    require(sub.d % (r - 1) == 0, "r-1 | d~", detail);
    require(sub.k % r == 0, "r | k~", detail);
    auto nc = regen_node_code(sub);
    int v = design.v, b = design.b(), kappa = design.kappa, c = sub.n / r;

    BfrCode code;
    code.tag = Construction::projective;
    code.params = {b * c, b, v * nc->M, b * (sub.k / r), 0, kappa * nc->alpha, kappa * sub.d, 1, nc->beta};
    validate_params(code.params);
    for (int i = 0; i < v; ++i) code.partitions.push_back({nc, i * nc->M});
    code.place = design_placement(design.blocks, v, c);
    code.recipe["construction"] = "projective";
    code.recipe["p"] = std::to_string(p);
    put_sub(code.recipe, sub);
    put_params(code.recipe, code.params);
    return code;
}

BfrCode toy_code(const codes::RegenParams& sub) {
    std::string detail = sub_str(sub);
    require(sub.n % 2 == 0, "2 | n~", detail);
    require(sub.k % 2 == 0, "2 | k~", detail);
    int c = sub.n / 2;
    require(sub.d <= c, "d~ <= n~/2", detail);
    auto nc = regen_node_code(sub);

    BfrCode code;
    code.tag = Construction::toy;
    code.params = {3 * c, 3, 3 * nc->M, 3 * (sub.k / 2), 0, 2 * nc->alpha, 2 * sub.d, 1, nc->beta};
    validate_params(code.params);
    for (int i = 0; i < 3; ++i) code.partitions.push_back({nc, i * nc->M});
    code.place = design_placement({{1, 2}, {3, 1}, {3, 2}}, 3, c);
    code.recipe["construction"] = "toy";
    put_sub(code.recipe, sub);
    put_params(code.recipe, code.params);
    return code;
}

BfrCode dcbd_code(int b, int sigma, const codes::RegenParams& sub) {
    std::string detail = "b=" + std::to_string(b) + " sigma=" + std::to_string(sigma) + " " + sub_str(sub);
    require(b >= 3, "b >= 3", detail);
    require(sigma >= 1 && sigma < b - 1, "1 <= sigma < b-1", detail);
    require(sub.d % (b - sigma - 1) == 0, "(b-sigma-1) | d~", detail);
    require(sub.n % (b - 1) == 0, "(b-1) | n~", detail);
    require(sub.k % (b - 1) == 0, "(b-1) | k~", detail);
    require(sub.n / (b - 1) >= sub.d / (b - sigma - 1), "n~/(b-1) >= d~/(b-sigma-1)", detail);
    auto nc = regen_node_code(sub);
    auto design = designs::dcbd(b, b - 1, b - sigma);
    int c = sub.n / (b - 1), parts = b * (b - sigma);

    BfrCode code;
    code.tag = Construction::dcbd;
    code.params = {b * c,
                   b,
                   parts * nc->M,
                   b * (sub.k / (b - 1)),
                   0,
                   (b - 1) * (b - sigma) * nc->alpha,
                   (b - sigma) * (sub.d / (b - sigma - 1)),
                   sigma,
                   (b - sigma - 1) * (b - 1) * nc->beta};
    validate_params(code.params);
    for (int i = 0; i < parts; ++i) code.partitions.push_back({nc, i * nc->M});
    code.place = design_placement(design.blocks, parts, c);
    code.rotation_period = b;
    code.rotation_reps = b - sigma;
    code.recipe["construction"] = "dcbd";
    code.recipe["b"] = std::to_string(b);
    code.recipe["sigma"] = std::to_string(sigma);
    put_sub(code.recipe, sub);
    put_params(code.recipe, code.params);
    return code;
}

BfrCode gab_mds_code(int b, int c, int k_c, int rho) {
    std::string detail = "b=" + std::to_string(b) + " c=" + std::to_string(c) + " k_c=" + std::to_string(k_c) +
                         " rho=" + std::to_string(rho);
    require(b >= 1 && c >= 1 && k_c >= 1, "b, c, k_c >= 1", detail);
    require(k_c <= c, "k_c <= c", detail);
    require(rho >= 0 && rho < b, "0 <= rho < b", detail);
    int K = (b - rho) * k_c, N = b * k_c;
    require(c <= 256, "c <= 256", detail);
    require(N <= 64, "N = b*k_c <= 64", detail);

    BfrCode code;
    code.tag = Construction::gab_mds;
    code.params = {b * c, b, K, K, rho, 1, 0, 0, 0};
    validate_collect_params(code.params);
    code.outer = std::make_shared<const codes::GabidulinCode>(N, K, unsigned(N));
    auto mds = std::make_shared<const codes::NodeCode>(codes::mds_node_code(codes::MdsCode(c, k_c)));
    for (int i = 0; i < b; ++i) code.partitions.push_back({mds, i * k_c});
    code.place.assign(b, std::vector<std::vector<Slot>>(c));
    for (int i = 0; i < b; ++i)
        for (int t = 0; t < c; ++t) code.place[i][t].push_back({i, t});
    code.recipe["construction"] = "gab_mds";
    code.recipe["b"] = std::to_string(b);
    code.recipe["c"] = std::to_string(c);
    code.recipe["k_c"] = std::to_string(k_c);
    code.recipe["rho"] = std::to_string(rho);
    put_params(code.recipe, code.params);
    return code;
}

// DSS block j is parallel class j; each line of the class is a node type with
// n~/(p+1) nodes, and a node of type L holds one subnode of every point of L.
BfrCode relaxed_code(int p, const codes::RegenParams& sub, int sigma, int rho) {
    auto rd = designs::rbibd_affine(p);
    int b = p + 1, v = rd.design.v, kappa = rd.design.kappa;
    std::string detail = "p=" + std::to_string(p) + " sigma=" + std::to_string(sigma) + " rho=" +
                         std::to_string(rho) + " " + sub_str(sub);
    require(sub.n % b == 0, "(p+1) | n~", detail);
    auto nc = regen_node_code(sub);
    int per_type = sub.n / b, c = kappa * per_type;

    BfrCode code;
    code.tag = Construction::relaxed;
    code.params = {b * c, b, v * nc->M, kappa * sub.k, rho, kappa * nc->alpha, kappa * sub.d, sigma, nc->beta};
    validate_params(code.params);
    require(code.params.k_c() % kappa == 0, "kappa | k_c", detail);
    require(code.params.d_r() % kappa == 0, "kappa | d_r", detail);
    require((b - rho) * (code.params.k_c() / kappa) == sub.k, "(b-rho) k_c / kappa = k~", detail);
    require((b - sigma) * (code.params.d_r() / kappa) == sub.d, "(b-sigma) d_r / kappa = d~", detail);
    for (int i = 0; i < v; ++i) code.partitions.push_back({nc, i * nc->M});

    code.place.assign(b, std::vector<std::vector<Slot>>(c));
    code.node_type.assign(b, std::vector<int>(c));
    for (int j = 0; j < b; ++j)
        for (int l = 0; l < int(rd.classes[j].size()); ++l) {
            int line = rd.classes[j][l];
            for (int t = 0; t < per_type; ++t) {
                int node = l * per_type + t;
                code.node_type[j][node] = line;
                for (int pt : rd.design.blocks[line]) code.place[j][node].push_back({pt - 1, j * per_type + t});
            }
        }
    code.recipe["construction"] = "relaxed";
    code.recipe["p"] = std::to_string(p);
    code.recipe["sigma"] = std::to_string(sigma);
    code.recipe["rho"] = std::to_string(rho);
    put_sub(code.recipe, sub);
    put_params(code.recipe, code.params);
    return code;
}

}  // namespace bfr::core
