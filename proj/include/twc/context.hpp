#pragma once

// Everything needed to work over one q, wired together. The members refer to
// each other by address, so a Context is created once and never moved.

#include <memory>

#include "twc/cubic.hpp"
#include "twc/group.hpp"
#include "twc/orbits.hpp"
#include "twc/pg3.hpp"

namespace twc {

struct Context {
  pg3::Space space;
  cubic::TwistedCubic cubic;
  group::Gq group;
  orbits::Engine engine;

  explicit Context(gf::Field field, orbits::EngineOptions options = {})
      : space(std::move(field)), cubic(space), group(space), engine(cubic, group, options) {}
  Context(const Context&) = delete;
  Context& operator=(const Context&) = delete;

  const gf::Field& field() const noexcept { return space.field(); }
  std::uint32_t q() const noexcept { return space.q(); }
};

inline std::unique_ptr<Context> make_context(std::uint32_t q, gf::FieldOptions options = {}) {
  return std::make_unique<Context>(gf::Field(q, options));
}

}  // namespace twc
