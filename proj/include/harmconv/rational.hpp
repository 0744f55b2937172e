#pragma once

#include "harmconv/cpoly.hpp"

namespace harmconv {

// z^power * prefactor * num(z) / den(z), with |prefactor| = 1.
struct RationalFn {
    CPoly num;
    CPoly den;
    Cx prefactor{1.0, 0.0};
    int power = 0;

    RationalFn() = default;
    RationalFn(CPoly num, CPoly den, Cx prefactor = {1.0, 0.0}, int power = 0);

    Cx operator()(Cx z) const;
};

}  // namespace harmconv
