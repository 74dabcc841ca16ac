#include "tsvs/tensor_k0.hpp"

namespace tsvs {

Decomposition decompose(const MatrixHom<NFElement>& h) {
    const NumberField k = h.proto().field();
    hom_validate(h);
    OrbitTable table = classify(k);
    const int n = h.n();
    Decomposition d{k, n, {}};
    int covered = 0;
    for (const Orbit& orbit : table.orbits) {
        Matrix<NFElement> ga = eval_poly_at(orbit.factor, h.gen_image);
        int nullity = n - rank(ga);
        if (nullity == 0) continue;
        if (nullity % orbit.size != 0)
            throw Error("NotSemisimple", "kernel dimension not divisible by the orbit size");
        d.parts.emplace_back(orbit.id, nullity / orbit.size);
        covered += nullity;
    }
    if (covered != n)
        throw Error("NotSemisimple", "simple constituents do not fill the space");
    return d;
}

bool hom_similar(const MatrixHom<NFElement>& h1, const MatrixHom<NFElement>& h2) {
    if (!same_field(h1.proto(), h2.proto()))
        throw Error("FieldMismatch", "homs live over different fields");
    if (h1.n() != h2.n()) return false;
    return decompose(h1) == decompose(h2);
}

bool hom_similar(const MatrixHom<RatFunc>& h1, const MatrixHom<RatFunc>& h2) {
    if (h1.n() != h2.n()) return false;
    return similarity_solve(h1.gen_image, h2.gen_image).has_value();
}

K0Presentation k0_presentation(const NumberField& k) {
    OrbitTable table = classify(k);
    K0Presentation pres{k, {}, {}, false, false, 0};
    int trivial_id = table.trivial_orbit().id;
    for (const Orbit& o : table.orbits)
        if (!o.trivial) pres.generator_orbits.push_back(o.id);
    const int r = static_cast<int>(pres.generator_orbits.size());

    std::vector<SimpleBimodule> simples;
    simples.reserve(r);
    for (int id : pres.generator_orbits) simples.push_back(simple_from_orbit(k, id));

    std::map<int, int> orbit_to_gen;  // orbit id -> generator index
    for (int i = 0; i < r; ++i) orbit_to_gen[pres.generator_orbits[i]] = i;

    pres.table.assign(r, std::vector<K0Relation>(r));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            Decomposition d = decompose(kronecker_compose(simples[i].hom, simples[j].hom));
            K0Relation rel;
            for (const auto& [orbit_id, mult] : d.parts) {
                if (orbit_id == trivial_id)
                    rel.alpha_const = mult;
                else
                    rel.alpha[orbit_to_gen.at(orbit_id)] = mult;
            }
            // dimension count
            int lhs = table.by_id(pres.generator_orbits[i]).size *
                      table.by_id(pres.generator_orbits[j]).size;
            int rhs = rel.alpha_const;
            for (const auto& [g, m] : rel.alpha) rhs += m * table.by_id(pres.generator_orbits[g]).size;
            if (lhs != rhs)
                throw Error("InvariantViolation", "K0 relation fails the dimension count");
            pres.table[i][j] = std::move(rel);
        }
    // tensor symmetry
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < i; ++j)
            if (pres.table[i][j].alpha_const != pres.table[j][i].alpha_const ||
                pres.table[i][j].alpha != pres.table[j][i].alpha)
                throw Error("InvariantViolation", "K0 relation table is not symmetric");

    pres.group_ring = true;
    for (const Orbit& o : table.orbits)
        if (o.size != 1) pres.group_ring = false;
    if (pres.group_ring) {
        // multiplication table on all orbits; trivial acts as the identity
        pres.group_order = static_cast<int>(table.orbits.size());
        auto mul = [&](int a, int b) -> int {
            if (a == trivial_id) return b;
            if (b == trivial_id) return a;
            const K0Relation& rel = pres.table[orbit_to_gen.at(a)][orbit_to_gen.at(b)];
            if (rel.alpha_const == 1 && rel.alpha.empty()) return trivial_id;
            if (rel.alpha_const == 0 && rel.alpha.size() == 1 &&
                rel.alpha.begin()->second == 1)
                return pres.generator_orbits[rel.alpha.begin()->first];
            throw Error("InvariantViolation", "group ring product is not a single simple");
        };
        for (const Orbit& o : table.orbits) {
            int acc = o.id;
            int order = 1;
            while (acc != trivial_id) {
                acc = mul(acc, o.id);
                ++order;
                if (order > pres.group_order + 1)
                    throw Error("InvariantViolation", "group element order exceeds group size");
            }
            if (order == pres.group_order) pres.cyclic_group = true;
        }
    }
    return pres;
}

std::vector<std::pair<Orbit, KPoly>> k0_group_structure(const NumberField& k) {
    OrbitTable table = classify(k);
    std::vector<std::pair<Orbit, KPoly>> out;
    out.reserve(table.orbits.size());
    for (const Orbit& o : table.orbits) out.emplace_back(o, o.factor);
    return out;
}

}  // namespace tsvs
