#include "bfr/gabidulin.hpp"

#include <algorithm>

namespace bfr::codes {

using gf::Elem;
using gf::ExtElem;

GabidulinCode::GabidulinCode(int N, int K, unsigned m) : N_(N), K_(K) {
    if (K < 1 || N < K) throw ParamError("1 <= K <= N", "N=" + std::to_string(N) + " K=" + std::to_string(K));
    unsigned mm = std::max<unsigned>(m, unsigned(N));
    F_ = gf::ext_field_for(gf::FieldSpec::tower(gf::FieldSpec::binary(8), mm));
    for (int j = 0; j < N; ++j) g_.push_back(F_->basis(unsigned(j)));
}

GabidulinCode::GabidulinCode(int N, int K, const gf::FieldSpec& ext, std::vector<ExtElem> points)
    : N_(N), K_(K), F_(gf::ext_field_for(ext)), g_(std::move(points)) {
    if (K < 1 || N < K) throw ParamError("1 <= K <= N", "N=" + std::to_string(N) + " K=" + std::to_string(K));
    if (F_->degree() < unsigned(N))
        throw ParamError("m >= N", "extension degree " + std::to_string(F_->degree()) + " < N=" + std::to_string(N));
    if (int(g_.size()) != N) throw ParamError("N points", "got " + std::to_string(g_.size()));
    for (auto& p : g_) p.field = F_.get();
    if (gf::vector_rank(g_) != N) throw ParamError("independent points", "evaluation points are dependent");
}

std::vector<ExtElem> GabidulinCode::encode(const std::vector<ExtElem>& message) const {
    if (int(message.size()) != K_)
        throw PreconditionError("gabidulin encode: expected " + std::to_string(K_) + " symbols, got " +
                                std::to_string(message.size()));
    gf::LinearizedPoly f(message);
    std::vector<ExtElem> out;
    out.reserve(N_);
    for (const auto& g : g_) out.push_back(f.eval(g));
    return out;
}

ExtElem GabidulinCode::combined_point(const std::vector<Elem>& coeffs) const {
    ExtElem h = F_->zero();
    for (int j = 0; j < N_ && j < int(coeffs.size()); ++j)
        if (coeffs[j]) h = F_->add(h, F_->scale(g_[j], coeffs[j]));
    return h;
}

std::vector<int> GabidulinCode::independent_subset(const std::vector<ExtElem>& pts) const {
    std::vector<int> chosen;
    std::vector<ExtElem> basis;
    for (int i = 0; i < int(pts.size()) && int(chosen.size()) < K_; ++i) {
        basis.push_back(pts[i]);
        if (gf::vector_rank(basis) == int(basis.size()))
            chosen.push_back(i);
        else
            basis.pop_back();
    }
    return chosen;
}

ExtMatrix GabidulinCode::moore_inverse(const std::vector<ExtElem>& pts) const {
    ExtMatrix a(F_.get(), K_, pts.size());
    for (std::size_t s = 0; s < pts.size(); ++s) {
        ExtElem p = pts[s];
        for (int i = 0; i < K_; ++i) {
            if (i) p = F_->frobenius(p);
            a(i, s) = p;
        }
    }
    auto inv = a.inverse();
    if (!inv) throw RankErasure(gf::vector_rank(pts), K_);
    return *inv;
}

std::vector<ExtElem> GabidulinCode::decode_points(const std::vector<std::pair<ExtElem, ExtElem>>& evals) const {
    std::vector<ExtElem> pts;
    for (const auto& e : evals) pts.push_back(e.first);
    auto idx = independent_subset(pts);
    if (int(idx.size()) < K_) throw RankErasure(int(idx.size()), K_);
    std::vector<ExtElem> sel, y;
    for (int i : idx) {
        sel.push_back(evals[i].first);
        y.push_back(evals[i].second);
    }
    auto msg = moore_inverse(sel).left_mul(y);
    gf::LinearizedPoly f(msg);
    for (const auto& [p, v] : evals)
        if (!F_->eq(f.eval(p), v)) throw CorruptionError("gabidulin decode: evaluation inconsistent with message");
    return msg;
}

std::vector<ExtElem> GabidulinCode::decode_erasures(const std::map<int, ExtElem>& available) const {
    std::vector<std::pair<ExtElem, ExtElem>> evals;
    for (const auto& [j, v] : available) {
        if (j < 0 || j >= N_) throw PreconditionError("gabidulin decode: position out of range");
        evals.emplace_back(g_[j], v);
    }
    return decode_points(evals);
}

}  // namespace bfr::codes
