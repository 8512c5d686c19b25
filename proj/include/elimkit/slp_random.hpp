#pragma once

#include <cstdint>
#include <string>

#include "elimkit/random.hpp"
#include "elimkit/slp.hpp"

namespace elimkit {

struct RandomSlpShape {
  std::size_t params = 1;
  std::size_t vars = 2;
  std::size_t instructions = 8;
  bool allow_const_division = true;
};

/// Small random program over add/sub/mul (and division by nonzero constants),
/// fully determined by the seed. The last node is the single output.
inline Slp random_slp(std::uint64_t seed, const RandomSlpShape& shape = {}) {
  CounterRng rng(seed, 0x51e);
  SlpBuilder b;
  std::vector<SlpBuilder::Ref> pool;
  for (std::size_t i = 0; i < shape.params; ++i) pool.push_back(b.param("P" + std::to_string(i + 1)));
  for (std::size_t i = 0; i < shape.vars; ++i) pool.push_back(b.var("X" + std::to_string(i + 1)));
  if (pool.empty()) pool.push_back(b.constant(Rational(1)));
  for (std::size_t k = 0; k < shape.instructions; ++k) {
    const auto pick = [&] { return pool[rng.below(pool.size())]; };
    const auto roll = rng.below(shape.allow_const_division ? 10 : 9);
    SlpBuilder::Ref r;
    if (roll < 3) r = b.add(pick(), pick());
    else if (roll < 5) r = b.sub(pick(), pick());
    else if (roll < 8) r = b.mul(pick(), pick());
    else if (roll < 9) r = b.mul(pick(), b.constant(rng.rational(5, 3)));
    else {
      Rational c = rng.rational(5, 3);
      if (c.is_zero()) c = Rational(2);
      r = b.div(pick(), b.constant(c));
    }
    pool.push_back(r);
  }
  b.output(pool.back());
  return b.build();
}

}  // namespace elimkit
