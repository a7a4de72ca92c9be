#ifndef DP3_RELATIONS_HPP
#define DP3_RELATIONS_HPP

#include "dp3/fieldelem.hpp"

namespace dp3 {

/// Relation of the form  symbol^power = value  used to rewrite elements to a
/// normal form with symbol-degree < power.
struct PowerRelation {
    std::string symbol;
    int power = 2;
    FieldElement value;
};

/// Relation of the form  symA * symB = value  (e.g. a product of first-level
/// coefficients pinned by a rationality constraint).
struct PairRelation {
    std::string sym_a;
    std::string sym_b;
    FieldElement value;
};

/// Rewrite a polynomial so every monomial has symbol-degree < power.
ParamPoly reduce_power(const ParamPoly& p, const PowerRelation& rel);
/// Rewrite so no monomial contains both symbols of the pair.
ParamPoly reduce_pair(const ParamPoly& p, const PairRelation& rel);

/// Full normal form of a field element modulo a list of power relations:
/// numerator and denominator reduced, residual symbol powers cleared from the
/// denominator by an extended-gcd inverse in the quotient ring.
FieldElement reduce_modulo(const FieldElement& e, const std::vector<PowerRelation>& rels);
FieldElement reduce_modulo(const FieldElement& e, const PowerRelation& rel);
FieldElement reduce_modulo(const FieldElement& e, const PairRelation& rel);

/// Equality in the quotient ring defined by the relations.
bool equal_modulo(const FieldElement& a, const FieldElement& b,
                  const std::vector<PowerRelation>& rels);
bool equal_modulo(const FieldElement& a, const FieldElement& b, const PairRelation& rel);

} // namespace dp3

#endif
