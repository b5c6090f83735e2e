#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "fso/metrics.hpp"
#include "oracles.hpp"

using namespace fso;

namespace {

SampledWaveform wave_of(std::vector<double> samples, double rate = 100.0)
{
    SampledWaveform w;
    w.samples = std::move(samples);
    w.sample_rate_hz = rate;
    w.unit = WaveformUnit::Ampere;
    return w;
}

// Eye whose traces are constant: level + Gaussian offset per trace.
EyeDiagram synthetic_eye(std::size_t traces_per_class, double mu1, double mu0, double sigma,
                         std::size_t spb, std::uint32_t seed)
{
    std::mt19937 rng(seed);
    std::normal_distribution<double> g(0.0, sigma);
    EyeDiagram eye;
    eye.samples_per_ui = spb;
    for (std::size_t t = 0; t < 2 * traces_per_class; ++t) {
        const bool one = t % 2 == 0;
        const double level = (one ? mu1 : mu0) + (sigma > 0.0 ? g(rng) : 0.0);
        eye.traces.emplace_back(2 * spb, level);
        eye.labels.push_back(one ? 1 : 0);
    }
    return eye;
}

}  // namespace

TEST_CASE("eye_fold shapes and labels")
{
    const BitSequence bits{{1, 0, 1, 1}};
    const SampledWaveform wave = nrz_encode(bits, 64, 1000.0);
    const EyeDiagram eye = eye_fold(wave, 64, bits);
    REQUIRE(eye.traces.size() == 3);
    for (const auto& t : eye.traces) CHECK(t.size() == 128);
    CHECK(eye.labels == std::vector<std::uint8_t>{1, 0, 1});
    CHECK(eye.samples_per_ui == 64);

    // ideal NRZ traces are piecewise constant at the two bit levels
    for (std::size_t k = 0; k < eye.traces.size(); ++k) {
        for (std::size_t i = 0; i < 64; ++i) {
            CHECK(eye.traces[k][i] == (bits.bits[k] ? 1.0 : 0.0));
            CHECK(eye.traces[k][64 + i] == (bits.bits[k + 1] ? 1.0 : 0.0));
        }
    }
}

TEST_CASE("eye_fold phase 0.5 average recovers level_one for clean NRZ")
{
    const BitSequence bits = prbs_generate(7, 1, 64);
    const double level_one = 0.73, level_zero = 0.11;
    const SampledWaveform wave = nrz_encode(bits, 32, 1000.0, level_one, level_zero);
    const EyeDiagram eye = eye_fold(wave, 32, bits);
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t t = 0; t < eye.traces.size(); ++t) {
        if (!eye.labels[t]) continue;
        sum += eye.traces[t][16];  // phase 0.5 of the labeled UI
        ++count;
    }
    REQUIRE(count > 0);
    CHECK(sum / static_cast<double>(count) == doctest::Approx(level_one).epsilon(1e-12));
}

TEST_CASE("eye_fold validates the sample count")
{
    const BitSequence bits{{1, 0}};
    CHECK_THROWS_AS(eye_fold(wave_of(std::vector<double>(100, 0.0)), 64, bits),
                    std::invalid_argument);
    CHECK_THROWS_AS(eye_fold(wave_of(std::vector<double>(64, 0.0)), 64, BitSequence{{1}}),
                    std::invalid_argument);
}

TEST_CASE("noiseless two-level eye reports the infinity sentinel")
{
    const EyeDiagram eye = synthetic_eye(8, 1.0, 0.0, 0.0, 16, 1);
    const EyeMetrics m = eye_metrics(eye);
    CHECK(std::isinf(m.q_factor));
    CHECK(m.q_factor > 0.0);
    CHECK(m.ber_estimate == 0.0);
    CHECK(m.mu1 == 1.0);
    CHECK(m.mu0 == 0.0);
    CHECK(m.sampling_phase == 0.5);
    CHECK(m.eye_height == doctest::Approx(1.0));
}

TEST_CASE("synthetic Gaussian eye measures Q near 10")
{
    const EyeDiagram eye = synthetic_eye(1200, 1.0, 0.0, 0.05, 8, 77);
    const EyeMetrics m = eye_metrics(eye);
    CHECK(m.q_factor > 9.5);
    CHECK(m.q_factor < 10.5);
    CHECK(m.ber_estimate == doctest::Approx(ber_from_q(m.q_factor)));
    CHECK(m.ber_estimate > 1e-26);
    CHECK(m.ber_estimate < 1e-20);
}

TEST_CASE("eye_metrics rejects degenerate patterns")
{
    EyeDiagram all_ones = synthetic_eye(4, 1.0, 0.0, 0.0, 8, 1);
    for (auto& l : all_ones.labels) l = 1;
    CHECK_THROWS_WITH_AS(eye_metrics(all_ones), doctest::Contains("degenerate"),
                         std::invalid_argument);

    EyeDiagram one_zero = synthetic_eye(4, 1.0, 0.0, 0.0, 8, 1);
    one_zero.labels = {1, 1, 1, 1, 1, 1, 1, 0};
    CHECK_THROWS_WITH_AS(eye_metrics(one_zero), doctest::Contains("degenerate"),
                         std::invalid_argument);
}

TEST_CASE("Q is invariant under affine waveform scaling")
{
    std::mt19937 rng(55);
    std::normal_distribution<double> noise(0.0, 0.04);
    const BitSequence bits = prbs_generate(7, 1, 128);
    SampledWaveform wave = nrz_encode(bits, 16, 1000.0);
    for (double& s : wave.samples) s += noise(rng);

    const EyeMetrics base = eye_metrics(eye_fold(wave, 16, bits));
    const double a = 3.7, b = -0.45;
    SampledWaveform scaled = wave;
    for (double& s : scaled.samples) s = a * s + b;
    const EyeMetrics shifted = eye_metrics(eye_fold(scaled, 16, bits));

    CHECK(shifted.q_factor == doctest::Approx(base.q_factor).epsilon(1e-9));
    CHECK(shifted.sampling_phase == base.sampling_phase);
}

TEST_CASE("ber_from_q values and shape")
{
    CHECK(ber_from_q(0.0) == 0.5);
    CHECK(ber_from_q(6.0) == doctest::Approx(9.87e-10).epsilon(0.01));
    CHECK(ber_from_q(7.0) == doctest::Approx(1.28e-12).epsilon(0.01));
    CHECK(ber_from_q(std::numeric_limits<double>::infinity()) == 0.0);
    CHECK_THROWS_AS(ber_from_q(-0.1), std::invalid_argument);

    // quadrature oracle
    for (double q : {0.5, 1.0, 2.0, 4.0, 6.0, 7.0}) {
        CHECK(ber_from_q(q) == doctest::Approx(oracles::gaussian_tail(q)).epsilon(1e-6));
    }

    double prev = ber_from_q(0.0);
    for (double q = 0.25; q <= 8.0; q += 0.25) {
        const double ber = ber_from_q(q);
        CHECK(ber < prev);
        prev = ber;
    }
}

TEST_CASE("link margin in dB")
{
    CHECK(link_margin_db(-12.5, -12.5) == 0.0);
    CHECK(link_margin_db(-5.066, -20.0) == doctest::Approx(14.934).epsilon(0.001 / 14.934));
    CHECK(link_margin_db(-19.099, -20.0) == doctest::Approx(0.901).epsilon(0.001 / 0.901));

    // the dBm difference equals 10*log10 of the linear power ratio
    const double ratio_db =
        10.0 * std::log10(std::pow(10.0, (-5.066 - 30.0) / 10.0) /
                          std::pow(10.0, (-20.0 - 30.0) / 10.0));
    CHECK(link_margin_db(-5.066, -20.0) == doctest::Approx(ratio_db).epsilon(1e-12));

    std::mt19937 rng(61);
    std::uniform_real_distribution<double> dbm(-40.0, 20.0), offset(-10.0, 10.0);
    for (int i = 0; i < 100; ++i) {
        const double p = dbm(rng), s = dbm(rng), c = offset(rng);
        CHECK(link_margin_db(p + c, s + c) == doctest::Approx(link_margin_db(p, s)).epsilon(1e-9));
    }
}

TEST_CASE("paper-compat link margin replication")
{
    CHECK(paper_link_margin(-5.066, -20.0) == doctest::Approx(-5.9636).epsilon(0.001 / 5.9636));
    CHECK(paper_link_margin(-19.099, -20.0) == doctest::Approx(-0.2001).epsilon(0.001 / 0.2001));
    CHECK(paper_link_margin(-20.0, -20.0) == 0.0);
    CHECK_THROWS_WITH_AS(paper_link_margin(5.0, -20.0), doctest::Contains("undefined"),
                         std::invalid_argument);
    CHECK_THROWS_AS(paper_link_margin(-5.0, 0.0), std::invalid_argument);
}
