#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "socialucb/config.hpp"
#include "socialucb/io.hpp"
#include "support.hpp"

using namespace socialucb;
using testsupport::TempDir;

TEST_CASE("empty config text yields the defaults") {
    CHECK(parse_config_text("") == SimConfig{});
    CHECK(parse_config_text("# only a comment\n\n   \n") == SimConfig{});
}

TEST_CASE("overrides apply after file values") {
    const auto c = parse_config_text("horizon = 300\ntrials=4 # trailing comment\n",
                                     {"horizon=5000", "policy=random_walk"});
    CHECK(c.horizon == 5000);
    CHECK(c.trials == 4);
    CHECK(c.policy == PolicyKind::RandomWalk);
}

TEST_CASE("validation errors name the key and its range") {
    try {
        parse_config_text("gamma = 1.5");
        FAIL("expected a configuration error");
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("gamma") != std::string::npos);
        CHECK(msg.find("(0,1)") != std::string::npos);
    }
    CHECK_THROWS_WITH_AS(parse_config_text("", {"p_frag=2"}), doctest::Contains("p_frag"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config_text("bogus = 1"), doctest::Contains("unknown configuration key"),
                         ConfigError);
    CHECK_THROWS_WITH_AS(parse_config_text("horizon = ten"), doctest::Contains("horizon"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config_text("policy = greedy"), doctest::Contains("policy"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config_text("horizon"), doctest::Contains("key=value"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("", {"memory_cap=-1"}), ConfigError);
    CHECK_THROWS_AS(parse_config_text("", {"n_agents=1"}), ConfigError);
    CHECK_THROWS_AS(parse_config_text("", {"decay_lambda=1"}), ConfigError);
    CHECK_THROWS_AS(parse_config_text("", {"sigma_scale=0"}), ConfigError);
    CHECK_NOTHROW(parse_config_text("", {"family=gaussian", "sigma_scale=0"}));
}

TEST_CASE("unreadable config file") {
    CHECK_THROWS_WITH_AS(parse_config("/nonexistent/socialucb.cfg"), doctest::Contains("cannot read"),
                         ConfigError);
}

TEST_CASE("config file on disk") {
    TempDir dir("cfg");
    const auto path = dir / "run.cfg";
    std::ofstream(path) << "n_agents = 20\nfamily = gaussian\n";
    const auto c = parse_config(path, {"n_agents=30"});
    CHECK(c.n_agents == 30);
    CHECK(c.rewards.family == RewardFamily::ClippedGaussian);
}

TEST_CASE("config round-trips losslessly through its text form") {
    SimConfig c;
    c.density = 0.1 + 0.2;
    c.learner.alpha = 1.0 / 3.0;
    c.edges.theta = 0.123456789012345678;
    c.master_seed = 18446744073709551615ull;
    c.out_dir = "some dir/with spaces";
    c.identical_trial_seeds = true;
    c.rewards.family = RewardFamily::ClippedGaussian;
    c.policy = PolicyKind::MABOnly;
    const auto back = parse_config_text(to_config_text(c));
    CHECK(back == c);
    CHECK(back.density == 0.1 + 0.2);
    for (const auto& key : config_keys()) CHECK(config_value(back, key) == config_value(c, key));
}

TEST_CASE("fixed six-decimal formatting rounds ties away from zero") {
    using io::fixed6;
    CHECK(fixed6(0.0) == "0.000000");
    CHECK(fixed6(0.5) == "0.500000");
    CHECK(fixed6(1.0) == "1.000000");
    CHECK(fixed6(123.456) == "123.456000");
    // 1/128 = 0.0078125 exactly: the tie goes up, not to even.
    CHECK(fixed6(0.0078125) == "0.007813");
    CHECK(fixed6(-0.0078125) == "-0.007813");
    CHECK(fixed6(0.0234375) == "0.023438");
    CHECK(fixed6(0.9999996) == "1.000000");
    CHECK(fixed6(-0.0000001) == "0.000000");
    CHECK(fixed6(-0.25) == "-0.250000");
    CHECK(fixed6(2.0 / 3.0) == "0.666667");
}

TEST_CASE("golden CSV headers") {
    CHECK(std::string(io::kRecordsHeader) ==
          "trial,step,agent,kind,target,reward,fitness,cum_fitness,step_regret,cum_regret");
    CHECK(std::string(io::kNetworkHeader) ==
          "trial,step,avg_degree,avg_clustering,largest_component,edge_count");
    CHECK(std::string(io::kSummaryHeader) == "policy,mean_final_cum_fitness,ci95,mean_final_cum_regret");
    CHECK(std::string(io::kLearnerHeader) == "agent,target,mu_hat,visits,q_state,q_value");
}

TEST_CASE("record rows") {
    SimConfig c;
    c.n_agents = 3;
    c.horizon = 2;
    c.trials = 1;
    std::ostringstream out;
    io::write_records_header(out);
    run_trial(c, 0, [&](std::span<const TrialRecord> rows) { io::write_records(out, rows); });
    const auto lines = testsupport::lines_of(out.str());
    CHECK(lines.size() == 7);
    CHECK(lines[0] == io::kRecordsHeader);
    CHECK(lines[1].rfind("0,1,0,", 0) == 0);
    CHECK(lines[6].rfind("0,2,2,", 0) == 0);

    std::ostringstream idle;
    TrialRecord r;
    r.trial = 0;
    r.step = 3;
    r.agent = 4;
    io::write_records(idle, std::span(&r, 1));
    CHECK(idle.str() == "0,3,4,idle,-1,0.000000,0.000000,0.000000,0.000000,0.000000\n");
}

TEST_CASE("network series rows") {
    std::ostringstream out;
    SocialGraph empty(4);
    SocialGraph tri(3);
    tri.set_edge(0, 1, 0.5);
    tri.set_edge(1, 2, 0.5);
    tri.set_edge(0, 2, 0.5);
    const std::vector<NetworkSample> samples{{0, network_stats(empty)}, {10, network_stats(tri)}};
    io::write_network_series(out, 2, samples);
    CHECK(out.str() == "2,0,0.000000,0.000000,1,0\n2,10,2.000000,1.000000,3,3\n");

    SimConfig c;
    c.n_agents = 10;
    c.horizon = 100;
    c.stats_interval = 10;
    CHECK(run_trial(c, 0).network.size() == 11);
}

TEST_CASE("edge list and true means") {
    SocialGraph g(3);
    g.set_edge(2, 0, 0.25);
    std::ostringstream e;
    io::write_edge_list(e, g.edges());
    CHECK(e.str() == "0,2,0.250000\n");

    const auto m = RewardModel::from_means(3, {}, [](NodeId i, NodeId j) { return 0.1 * (i + j); });
    std::ostringstream t;
    io::write_true_means(t, m);
    CHECK(t.str() == "i,j,mu\n0,1,0.100000\n0,2,0.200000\n1,2,0.300000\n");
}

TEST_CASE("learner dump") {
    AgentLearner l;
    l.update_mean(3, 0.5);
    l.set_q(AgentState{1, 2}, SocialAction::exploit(3), 0.25);
    l.set_q(AgentState{0, 0}, SocialAction::explore(9), -0.5);
    l.update_mean(7, 1.0);
    std::vector<AgentLearner> all{l};
    std::ostringstream out;
    io::write_learner_dump(out, all);
    CHECK(out.str() ==
          "agent,target,mu_hat,visits,q_state,q_value\n"
          "0,3,0.500000,1,6,0.250000\n"
          "0,7,1.000000,1,,\n"
          "0,-1,,,0,-0.500000\n");
}

TEST_CASE("summary table") {
    std::vector<io::SummaryRow> rows{{"social_ucb", 12.5, 0.75, 3.0}, {"random_walk", 9.0, std::nullopt, 4.0}};
    std::ostringstream out;
    io::write_summary(out, rows);
    CHECK(out.str() ==
          "policy,mean_final_cum_fitness,ci95,mean_final_cum_regret\n"
          "social_ucb,12.500000,0.750000,3.000000\n"
          "random_walk,9.000000,,4.000000\n");
}

TEST_CASE("run_to_directory writes a reproducible artifact set") {
    SimConfig c;
    c.n_agents = 15;
    c.horizon = 120;
    c.trials = 3;
    TempDir a("run_a"), b("run_b");
    std::vector<io::OutputFile> inv_a, inv_b;
    io::run_to_directory(c, a.path(), inv_a);
    io::run_to_directory(c, b.path(), inv_b);
    for (const char* name : {"records.csv", "network.csv", "curve.csv", "graph_t0.edges",
                             "graph_t100.edges", "graph_t120.edges"}) {
        CAPTURE(name);
        REQUIRE(std::filesystem::exists(a / name));
        CHECK(testsupport::slurp(a / name) == testsupport::slurp(b / name));
    }
    CHECK_FALSE(std::filesystem::exists(a / "graph_t300.edges"));
    REQUIRE(inv_a.size() == 6);
    CHECK(inv_a[0].rows == 3u * 120u * 15u);
    CHECK(testsupport::lines_of(testsupport::slurp(a / "records.csv")).size() == 3u * 120u * 15u + 1);
}

TEST_CASE("manifest echoes a config that reproduces the run") {
    SimConfig c;
    c.horizon = 7;
    c.trials = 2;
    c.density = 0.3;
    TempDir dir("manifest");
    const std::vector<io::OutputFile> outputs{{"records.csv", 10}};
    io::write_manifest(dir / "manifest.json", c, "2026-01-01T00:00:00Z", "2026-01-01T00:00:01Z", outputs);
    const auto j = nlohmann::json::parse(testsupport::slurp(dir / "manifest.json"));
    CHECK(j["tool"] == "socialucb");
    CHECK(j["master_seed"] == c.master_seed);
    CHECK(j["outputs"][0]["rows"] == 10);
    CHECK(j["config"]["horizon"] == "7");
    CHECK(parse_config_text(j["config_text"].get<std::string>()) == c);
    CHECK(j["config"].size() == config_keys().size());
}
