#include "doctest.h"

#include <cmath>

#include "fixtures.hpp"

using namespace bnec;
using namespace bnec::test;

TEST_CASE("degenerate channels") {
    FieldPtr f7 = Field::make(7);
    Rng rng(1);

    NoiseModel silent = uniform_noise_model(6, 7, 0.0, 0.0);
    NoiseVector nv = sample_noise(silent, *f7, rng);
    CHECK(nv.hamming_weight() == 0);
    CHECK(nv.erased.empty());

    FieldPtr f2 = Field::make(2);
    NoiseModel always = uniform_noise_model(4, 2, 1.0, 0.0);
    NoiseVector nv2 = sample_noise(always, *f2, rng);
    CHECK(nv2.hamming_weight() == 4);
    for (Symbol e : nv2.errors) CHECK(e == 1);  // only nonzero symbol in F_2
}

TEST_CASE("mean hamming weight matches the binomial mean") {
    FieldPtr f7 = Field::make(7);
    NoiseModel model = uniform_noise_model(10, 7, 0.1, 0.0);
    Rng master(20240812);
    const int trials = 100000;
    long long total = 0;
    for (int i = 0; i < trials; ++i) {
        Rng stream = master.split({std::uint64_t(i)});
        total += sample_noise(model, *f7, stream).hamming_weight();
    }
    double mean = double(total) / trials;
    CHECK(mean == doctest::Approx(1.0).epsilon(0.03));
}

TEST_CASE("per-edge error frequency within 3 sigma") {
    FieldPtr f7 = Field::make(7);
    std::vector<double> probs{0.02, 0.1, 0.3, 0.0};
    NoiseModel model;
    model.q = 7;
    model.p_err = probs;
    model.p_ers = {0.05, 0.0, 0.2, 0.0};
    Rng master(99);
    const int trials = 100000;
    std::vector<long long> err_count(4, 0), ers_count(4, 0);
    for (int i = 0; i < trials; ++i) {
        Rng stream = master.split({std::uint64_t(i)});
        NoiseVector nv = sample_noise(model, *f7, stream);
        for (int e = 0; e < 4; ++e) {
            err_count[e] += nv.errors[e] != 0;
            ers_count[e] += nv.is_erased(e);
        }
    }
    for (int e = 0; e < 4; ++e) {
        double sigma_err = std::sqrt(probs[e] * (1 - probs[e]) / trials);
        CHECK(std::abs(double(err_count[e]) / trials - probs[e]) <= 3 * sigma_err + 1e-12);
        double pe = model.p_ers[e];
        double sigma_ers = std::sqrt(pe * (1 - pe) / trials);
        CHECK(std::abs(double(ers_count[e]) / trials - pe) <= 3 * sigma_ers + 1e-12);
    }
}

TEST_CASE("error values are uniform over the nonzero symbols") {
    FieldPtr f7 = Field::make(7);
    NoiseModel model = uniform_noise_model(10, 7, 0.1, 0.0);
    Rng master(31337);
    const int trials = 100000;
    std::vector<long long> hist(7, 0);
    long long n = 0;
    for (int i = 0; i < trials; ++i) {
        Rng stream = master.split({std::uint64_t(i)});
        NoiseVector nv = sample_noise(model, *f7, stream);
        for (Symbol e : nv.errors)
            if (e != 0) {
                ++hist[e];
                ++n;
            }
    }
    double expected = double(n) / 6.0;
    double chi2 = 0;
    for (int v = 1; v <= 6; ++v) chi2 += (hist[v] - expected) * (hist[v] - expected) / expected;
    CHECK(chi2 < 15.0863);  // chi-square critical value, df = 5, alpha = 0.01
}

TEST_CASE("packet: one erasure draw, independent per-symbol errors") {
    BnecCode code = repetition_code();
    std::vector<InputVector> payload(3, InputVector{5});
    int e4 = noise_index_of(code, "e4");
    int e5 = noise_index_of(code, "e5");

    PacketSim sim = simulate_packet(code, payload, 42, std::vector<int>{e4, e5});
    CHECK(sim.erased == std::vector<int>{e4, e5});
    const Packet& pkt = sim.packets.at("t");
    CHECK(pkt.header_erasures == std::vector<int>{e4, e5});
    CHECK(pkt.payload.size() == 3);
    for (const ReceivedVector& z : pkt.payload) CHECK(z.known_erasures == std::vector<int>{e4, e5});
    for (const NoiseVector& nv : sim.symbol_noise) CHECK(nv.erased == sim.erased);
}

TEST_CASE("per-symbol error draws are uncorrelated across symbol times") {
    NetworkGraph g = three_path();
    DesignConfig cfg;
    cfg.q = 47;
    cfg.seed = 4;
    BnecCode code = design_code(g, 1, cfg);
    for (CodeEdge& e : code.edges)
        if (!e.is_virtual) e.p_err = 0.3;

    const int packets = 20000;
    long long both = 0, first = 0, second = 0;
    for (int p = 0; p < packets; ++p) {
        std::vector<InputVector> payload(2, InputVector{1});
        PacketSim sim = simulate_packet(code, payload, 1000 + p);
        bool a = sim.symbol_noise[0].errors[0] != 0;
        bool b = sim.symbol_noise[1].errors[0] != 0;
        both += a && b;
        first += a;
        second += b;
    }
    double pa = double(first) / packets, pb = double(second) / packets;
    double pab = double(both) / packets;
    CHECK(pab == doctest::Approx(pa * pb).epsilon(0.15));  // covariance ~ 0
}

TEST_CASE("zero-noise packets reproduce the payload exactly") {
    BnecCode code = repetition_code();  // fixture file carries p = 0.05; zero it
    for (CodeEdge& e : code.edges) {
        e.p_err = 0.0;
        e.p_ers = 0.0;
    }
    std::vector<InputVector> payload{{1}, {2}, {6}};
    PacketSim sim = simulate_packet(code, payload, 7);
    const Packet& pkt = sim.packets.at("t");
    CHECK(pkt.header_erasures.empty());
    for (int s = 0; s < 3; ++s) {
        CHECK(pkt.payload[s].values ==
              mat_vec(code.receiver("t").G, payload[s]));
    }
}

TEST_CASE("header overflow") {
    BnecCode code = repetition_code();
    std::vector<InputVector> payload{{5}};
    std::vector<int> three{noise_index_of(code, "e4"), noise_index_of(code, "e5"),
                           noise_index_of(code, "e6")};
    std::sort(three.begin(), three.end());
    CHECK_THROWS_AS(simulate_packet(code, payload, 1, three), HeaderOverflow);  // delta_t = 2
    CHECK_THROWS_AS(simulate_packet(code, {}, 1), Error);                       // K >= 1
}
