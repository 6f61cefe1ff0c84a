#ifndef RRCF_RING_HPP
#define RRCF_RING_HPP

#include "rrcf/bigfloat.hpp"
#include "rrcf/cyclotomic.hpp"

namespace rrcf {

template <class R>
struct RingTraits;

template <>
struct RingTraits<CycloElem> {
    static constexpr bool exact = true;
    static CycloElem one_like(const CycloElem& x) { return CycloElem::one(x.level()); }
    static CycloElem zero_like(const CycloElem& x) { return CycloElem::zero(x.level()); }
    static bool is_zero(const CycloElem& x) { return x.is_zero(); }
    static ComplexBF to_complex(const CycloElem& x, mpfr_prec_t prec) { return x.embed(prec); }
};

template <>
struct RingTraits<ComplexBF> {
    static constexpr bool exact = false;
    static ComplexBF one_like(const ComplexBF& x) { return ComplexBF::one(x.precision()); }
    static ComplexBF zero_like(const ComplexBF& x) { return ComplexBF(x.precision()); }
    static bool is_zero(const ComplexBF& x) { return x.is_zero(); }
    static ComplexBF to_complex(const ComplexBF& x, mpfr_prec_t prec) { return x.with_precision(prec); }
};

}  // namespace rrcf

#endif  // RRCF_RING_HPP
