#ifndef MPV_TESTS_CUBIC_FIXTURE_HPP
#define MPV_TESTS_CUBIC_FIXTURE_HPP

#include "mpv/ratmap.hpp"

// Smooth cubic fourfold containing the planes t=u=v=0 and x=y=z=0, and the
// map given by the two linear projections from those planes.
inline const char* kCubic =
    "t*u*x-u^2*x+u*v*x-v^2*x+t*x^2-u*x^2+t^2*y-t*u*y-t*v*y-t*x*y-v*x*y-t*y^2+t*u*z+v^2*z-t*x*z-u*y*z-v*y*z-t*z^2+"
    "u*z^2";

template <class F>
struct CubicExample {
  mpv::RingPtr<F> P5, P22;
  mpv::Variety<F> X;
  mpv::MultiMap<F> phi;

  explicit CubicExample(const F& f) {
    using mpv::parse_poly;
    P5 = mpv::make_ring(f, {5}, {"t", "u", "v", "x", "y", "z"});
    P22 = mpv::make_ring(f, {2, 2});
    X = mpv::make_variety(P5, {parse_poly(P5, kCubic)});
    auto lin = [&](const char* a, const char* b, const char* c) {
      return mpv::Vec<F>{parse_poly(P5, a), parse_poly(P5, b), parse_poly(P5, c)};
    };
    auto P5all = mpv::ambient_variety(P5);
    auto whole = mpv::make_map(P5all, mpv::ambient_variety(P22), {lin("t", "u", "v"), lin("x", "y", "z")});
    phi = mpv::restrict(whole, X);
  }
};

#endif
