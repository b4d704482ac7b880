#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "adembed/embedder.hpp"
#include "adembed/errors.hpp"
#include "adembed/io.hpp"
#include "adembed/linalg.hpp"
#include "adembed/montecarlo.hpp"

using namespace adembed;

namespace {

std::vector<double> pair_with_dot(std::size_t n, double dot_uv, std::uint64_t index, std::vector<double>& u) {
  u = random_unit_vector(n, 5, StreamDomain::reference, index);
  auto g = random_unit_vector(n, 5, StreamDomain::trial, index);
  const double c = dot(g, u);
  for (std::size_t i = 0; i < n; ++i) g[i] -= c * u[i];
  const double gn = norm(g);
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = dot_uv * u[i] + std::sqrt(1 - dot_uv * dot_uv) * g[i] / gn;
  return v;
}

}  // namespace

TEST(BuildAdaptive, DirectMagnitudeSort) {
  const ProjectionSpec spec{1, 3, 4, 1.0};
  const std::vector<double> y = {0.1, -3.0, 2.0, -0.5};
  const auto e = build_adaptive_from_projections(spec, y, 2);
  EXPECT_EQ(e.locations, (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(e.ref_projections, (std::vector<double>{-3.0, 2.0}));
  EXPECT_FALSE(e.ref_code.bit(0));
  EXPECT_TRUE(e.ref_code.bit(1));
}

TEST(BuildAdaptive, TiesGoToSmallerIndex) {
  const ProjectionSpec spec{1, 3, 5, 1.0};
  const std::vector<double> y = {1.0, -2.0, 1.0, 2.0, -1.0};
  const auto e = build_adaptive_from_projections(spec, y, 3);
  EXPECT_EQ(e.locations, (std::vector<std::size_t>{0, 1, 3}));
}

TEST(BuildAdaptive, FullPoolIsSignRp) {
  const ProjectionSpec spec{3, 40, 64, 1.0};
  const auto u = random_unit_vector(40, 3, StreamDomain::reference, 1);
  const auto e = build_adaptive(spec, u, 64);
  std::vector<std::size_t> all(64);
  std::iota(all.begin(), all.end(), 0);
  EXPECT_EQ(e.locations, all);
  EXPECT_EQ(e.ref_code, from_signs(project_leading(spec, u, 64)));
}

TEST(BuildAdaptive, SelectedMagnitudesDominateFullSort) {
  const ProjectionSpec spec{4, 128, 8192, 1.0};
  const auto u = random_unit_vector(128, 4, StreamDomain::reference, 2);
  const auto y = project_leading(spec, u, spec.m_pool);
  const auto e = build_adaptive_from_projections(spec, y, 512);
  ASSERT_TRUE(std::is_sorted(e.locations.begin(), e.locations.end()));
  std::vector<bool> chosen(spec.m_pool, false);
  double min_in = INFINITY, max_out = 0.0;
  for (auto l : e.locations) {
    chosen[l] = true;
    min_in = std::min(min_in, std::abs(y[l]));
  }
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!chosen[i]) max_out = std::max(max_out, std::abs(y[i]));
  }
  EXPECT_GE(min_in, max_out);
  // Full-sort oracle: the selected set is exactly the 512 largest magnitudes.
  std::vector<double> mags(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) mags[i] = std::abs(y[i]);
  std::sort(mags.begin(), mags.end(), std::greater<>());
  EXPECT_EQ(min_in, mags[511]);
}

TEST(BuildAdaptive, Errors) {
  const ProjectionSpec spec{1, 4, 8, 1.0};
  const std::vector<double> zero(4, 0.0), u = {1, 0, 0, 0}, short_u = {1, 0};
  EXPECT_THROW(build_adaptive(spec, zero, 2), DegenerateInputError);
  EXPECT_THROW(build_adaptive(spec, u, 0), DomainError);
  EXPECT_THROW(build_adaptive(spec, u, 9), DomainError);
  EXPECT_THROW(build_adaptive(spec, short_u, 2), ShapeError);
}

TEST(Embed, SelfNegationAndScale) {
  const ProjectionSpec spec{6, 50, 400, 1.0};
  const auto u = random_unit_vector(50, 6, StreamDomain::reference, 3);
  const auto e = build_adaptive(spec, u, 60);
  EXPECT_EQ(embed(e, u), e.ref_code);
  EXPECT_EQ(embed(e, scaled(u, -1.0)), e.ref_code.complement());
  const auto v = random_unit_vector(50, 6, StreamDomain::reference, 4);
  EXPECT_EQ(embed(e, scaled(v, 3.7)), embed(e, v));
  EXPECT_EQ(embed(e, v), embed_projections(e, project_leading(spec, v, 400)));
  EXPECT_EQ(location_rows(e).apply(v), project(spec, v, e.locations));
}

TEST(SignRp, OrthogonalPairNearHalf) {
  const ProjectionSpec spec{7, 64, 10000, 1.0};
  std::vector<double> u;
  const auto v = pair_with_dot(64, 0.0, 1, u);
  const double d = hamming(sign_rp_embed(spec, 10000, u), sign_rp_embed(spec, 10000, v)).normalized;
  EXPECT_NEAR(d, 0.5, 0.02);
  EXPECT_EQ(hamming(sign_rp_embed(spec, 10000, u), sign_rp_embed(spec, 10000, u)).raw, 0u);
}

TEST(SignRp, SixtyDegreePairNearThird) {
  const ProjectionSpec spec{8, 64, 10000, 1.0};
  std::vector<double> u;
  const auto v = pair_with_dot(64, 0.5, 2, u);
  const double d = hamming(sign_rp_embed(spec, 10000, u), sign_rp_embed(spec, 10000, v)).normalized;
  EXPECT_NEAR(d, 1.0 / 3.0, 0.02);
}

TEST(SignRp, UsesLeadingRows) {
  const ProjectionSpec spec{9, 20, 100, 1.0};
  const auto u = random_unit_vector(20, 9, StreamDomain::reference, 5);
  const auto y = project_leading(spec, u, 30);
  EXPECT_EQ(sign_rp_embed(spec, 30, u), from_signs(y));
  EXPECT_THROW(sign_rp_embed(spec, 101, u), DomainError);
}

TEST(Universal, ZeroSignalAllZeros) {
  const ProjectionSpec spec{10, 16, 200, 1.0};
  const auto params = make_universal_params(spec, 200, 2.0);
  for (double d : params.dither) {
    ASSERT_GE(d, 0.0);
    ASSERT_LT(d, 2.0);
  }
  const std::vector<double> zero(16, 0.0);
  EXPECT_EQ(universal_embed(spec, 200, params, zero).popcount(), 0u);
}

TEST(Universal, AddingDeltaFlipsBit) {
  const ProjectionSpec spec{11, 16, 50, 1.0};
  const auto params = make_universal_params(spec, 50, 2.0);
  std::vector<double> y(50);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = 3.0 * std::sin(0.37 * i);
  const auto a = universal_from_projections(params, y);
  y[17] += 2.0;
  const auto b = universal_from_projections(params, y);
  EXPECT_EQ(hamming_raw(a, b), 1u);
  EXPECT_NE(a.bit(17), b.bit(17));
}

TEST(Universal, FarPairsSaturate) {
  const ProjectionSpec spec{12, 64, 10000, 1.0};
  const auto params = make_universal_params(spec, 10000, 2.0);
  std::vector<double> u;
  const auto v = pair_with_dot(64, 0.0, 3, u);
  const double d =
      hamming(universal_embed(spec, 10000, params, u), universal_embed(spec, 10000, params, v)).normalized;
  EXPECT_NEAR(d, 0.5, 0.03);
}

TEST(Universal, MatchesClosedFormAtOrthogonality) {
  // Expected distance 1/2 - sum_i exp(-(pi (2i+1) sigma |u-v| / (sqrt2 delta))^2) / (pi (i + 1/2))^2.
  const double gap = std::sqrt(2.0), delta = 2.0;
  double expected = 0.5;
  for (int i = 0; i < 50; ++i) {
    const double a = std::numbers::pi * (2 * i + 1) * gap / (std::sqrt(2.0) * delta);
    expected -= std::exp(-a * a) / std::pow(std::numbers::pi * (i + 0.5), 2);
  }
  double total = 0.0;
  for (std::uint64_t rep = 0; rep < 5; ++rep) {
    const ProjectionSpec spec{100 + rep, 64, 10000, 1.0};
    const auto params = make_universal_params(spec, 10000, delta);
    std::vector<double> u;
    const auto v = pair_with_dot(64, 0.0, 10 + rep, u);
    total += hamming(universal_embed(spec, 10000, params, u), universal_embed(spec, 10000, params, v)).normalized / 5;
  }
  EXPECT_NEAR(total, expected, 0.005);
}

TEST(Universal, BadDelta) {
  const ProjectionSpec spec{13, 4, 8, 1.0};
  EXPECT_THROW(make_universal_params(spec, 8, 0.0), DomainError);
  EXPECT_THROW(make_universal_params(spec, 8, -1.0), DomainError);
}

TEST(EmbedderIo, RoundTrip) {
  const ProjectionSpec spec{14, 30, 300, 1.5};
  const auto u = random_unit_vector(30, 14, StreamDomain::reference, 6);
  const auto e = build_adaptive(spec, u, 45);
  io::ByteWriter w;
  write_embedder(w, e);
  io::ByteReader r(w.bytes());
  EXPECT_EQ(read_embedder(r), e);
  EXPECT_EQ(r.remaining(), 0u);
}

TEST(EmbedderIo, CorruptionDetected) {
  const ProjectionSpec spec{15, 10, 40, 1.0};
  const auto u = random_unit_vector(10, 15, StreamDomain::reference, 7);
  const auto e = build_adaptive(spec, u, 5);
  io::ByteWriter w;
  write_embedder(w, e);
  auto bytes = w.take();
  auto truncated = bytes;
  truncated.resize(truncated.size() - 1);
  io::ByteReader rt(truncated);
  EXPECT_THROW(read_embedder(rt), FormatError);
  auto flipped = bytes;
  flipped.back() ^= 1u;  // reference code no longer matches projections
  io::ByteReader rf(flipped);
  EXPECT_THROW(read_embedder(rf), FormatError);
}
