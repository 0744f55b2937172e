#include "harmconv/rational.hpp"

#include "harmconv/errors.hpp"

#include <cmath>

namespace harmconv {

RationalFn::RationalFn(CPoly num_, CPoly den_, Cx prefactor_, int power_)
    : num(std::move(num_)), den(std::move(den_)), prefactor(prefactor_), power(power_)
{
    if (den.is_zero()) {
        throw ParameterError("rational function with zero denominator");
    }
    if (std::abs(std::abs(prefactor) - 1.0) > 1e-12) {
        throw ParameterError("rational prefactor must be unimodular");
    }
    if (power < 0) {
        throw ParameterError("negative power in rational function");
    }
}

Cx RationalFn::operator()(Cx z) const
{
    const Cx d = den(z);
    if (d == Cx{}) {
        throw DomainError("rational function evaluated at a pole");
    }
    Cx zp{1.0, 0.0};
    for (int k = 0; k < power; ++k) {
        zp *= z;
    }
    return zp * prefactor * num(z) / d;
}

}  // namespace harmconv
