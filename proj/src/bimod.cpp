#include <map>
#include <mutex>
#include <sstream>

#include "tsvs/config.hpp"
#include "tsvs/hom.hpp"

namespace tsvs {

namespace {

std::string ratpoly_brief(const RatPoly& p) {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i <= p.degree(); ++i) {
        if (i) os << ", ";
        os << p[i].str();
    }
    os << "]";
    return os.str();
}

}  // namespace

HomCertificate hom_validate(const MatrixHom<NFElement>& h) {
    const NumberField k = h.proto().field();
    if (!h.gen_image.square()) throw Error("NotSquare", "hom generator image must be square");
    Matrix<NFElement> fa = eval_ratpoly_at(k.defining_poly(), h.gen_image);
    if (!fa.is_zero_matrix())
        throw Error("NotAHomomorphism", "witness polynomial (coefficients low to high) " +
                                            ratpoly_brief(k.defining_poly()) +
                                            " does not annihilate the generator image");
    return HomCertificate{"defining polynomial annihilates the generator image"};
}

HomCertificate hom_validate(const MatrixHom<RatFunc>& h,
                            const std::vector<RatPoly>& denominator_test_set) {
    if (!h.gen_image.square()) throw Error("NotSquare", "hom generator image must be square");
    std::vector<RatPoly> tests = denominator_test_set;
    if (tests.empty()) {
        tests.push_back(RatPoly(std::vector<Rational>{Rational(0), Rational(1)}));  // t
        tests.push_back(RatPoly(std::vector<Rational>{Rational(1), Rational(0), Rational(1)}));
    }
    for (const RatPoly& q : tests) {
        Matrix<RatFunc> qa = eval_ratpoly_at(q, h.gen_image);
        if (!is_invertible(qa))
            throw Error("NotAHomomorphism", "witness polynomial (coefficients low to high) " +
                                                ratpoly_brief(q) +
                                                " evaluates to a singular matrix");
    }
    return HomCertificate{"denominator test set evaluates to invertible matrices"};
}

// --- classification ------------------------------------------------------

const Orbit& OrbitTable::by_id(int id) const {
    for (const Orbit& o : orbits)
        if (o.id == id) return o;
    throw Error("UnknownOrbit", "no orbit with id " + std::to_string(id));
}

const Orbit& OrbitTable::trivial_orbit() const {
    for (const Orbit& o : orbits)
        if (o.trivial) return o;
    throw Error("InvariantViolation", "orbit table without trivial orbit");
}

namespace {
std::mutex classify_mutex;
std::map<std::string, OrbitTable> classify_memo;

std::string field_key(const NumberField& k) {
    std::ostringstream os;
    for (const Rational& c : k.defining_poly().coeffs()) os << c.str() << ";";
    return os.str();
}
}  // namespace

OrbitTable classify(const NumberField& k) {
    {
        std::lock_guard<std::mutex> lock(classify_mutex);
        auto it = classify_memo.find(field_key(k));
        if (it != classify_memo.end()) return it->second;
    }
    KPoly f = kpoly_from_ratpoly(k.defining_poly(), k);
    auto factors = factor_over_K(f, k);
    KPoly trivial_factor(std::vector<NFElement>{-k.gen(), k.one()});

    OrbitTable table{k, {}};
    int id = 1;
    int size_sum = 0;
    int trivial_count = 0;
    for (const auto& [g, mult] : factors) {
        if (mult != 1)
            throw Error("InvariantViolation", "defining polynomial not squarefree over K");
        Orbit o;
        o.id = id++;
        o.factor = g;
        o.size = g.degree();
        o.trivial = (g == trivial_factor);
        trivial_count += o.trivial ? 1 : 0;
        size_sum += o.size;
        table.orbits.push_back(std::move(o));
    }
    if (size_sum != k.degree() || trivial_count != 1)
        throw Error("InvariantViolation", "orbit table failed size or trivial-orbit check");
    std::lock_guard<std::mutex> lock(classify_mutex);
    classify_memo.emplace(field_key(k), table);
    return table;
}

SimpleBimodule simple_from_orbit(const NumberField& k, int orbit_id,
                                 const std::vector<KPoly>& basis) {
    OrbitTable table = classify(k);
    const Orbit& orbit = table.by_id(orbit_id);
    RelativeExtension ext = RelativeExtension::make(k, orbit.factor, basis);
    const int m = ext.extension_degree();

    std::vector<NFElement> lam = ext.lambda_coords(k.gen());
    Matrix<NFElement> a(m, m, k.zero());
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            NFElement acc = k.zero();
            for (int t = 0; t < m; ++t) acc = acc + ext.beta(j, t, i) * lam[t];
            a.at(i, j) = acc;
        }
    MatrixHom<NFElement> hom{std::move(a)};
    hom_validate(hom);

    // eigenvector relation: (basis_1, ..., basis_m) * phi(gen) = Xbar * basis_j
    for (int j = 0; j < m; ++j) {
        KPoly lhs;
        for (int i = 0; i < m; ++i) lhs = lhs + ext.basis()[i].scaled(hom.gen_image.at(i, j));
        KPoly rhs = ext.reduce(ext.basis()[j].shifted_up(1));
        if (ext.reduce(lhs) != rhs)
            throw Error("InvariantViolation", "eigenvector relation failed for constructed simple");
    }

    std::vector<KPoly> eigenvector = ext.basis();
    return SimpleBimodule{k, orbit_id, std::move(ext), std::move(hom), std::move(eigenvector)};
}

std::vector<Matrix<NFElement>> endomorphism_basis(const SimpleBimodule& s) {
    const NumberField& k = s.field;
    const int m = s.ext.extension_degree();
    std::vector<Matrix<NFElement>> out;
    out.reserve(m);
    for (int p = 0; p < m; ++p) {
        Matrix<NFElement> mp(m, m, k.zero());
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) mp.at(i, j) = s.ext.beta(p, j, i);
        out.push_back(std::move(mp));
    }
    for (int p = 0; p < m; ++p) {
        for (int q = 0; q < p; ++q)
            if (out[p] * out[q] != out[q] * out[p])
                throw Error("InvariantViolation", "endomorphism matrices do not commute");
        if (out[p] * s.hom.gen_image != s.hom.gen_image * out[p])
            throw Error("InvariantViolation", "endomorphism does not commute with the hom image");
        KPoly mp = s.ext.min_poly_over_K(s.ext.basis()[p]);
        if (!eval_poly_at(mp, out[p]).is_zero_matrix())
            throw Error("InvariantViolation",
                        "endomorphism fails the minimal polynomial of its basis element");
    }
    return out;
}

}  // namespace tsvs
