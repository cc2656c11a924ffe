#include <algorithm>
#include <filesystem>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "scld/evaluation.hpp"
#include "scld/io.hpp"
#include "scld/pipeline.hpp"

using scld::DenseMatrix;
using scld::PipelineConfig;
using scld::RunRecord;

namespace {

namespace fs = std::filesystem;

struct Scratch {
  fs::path dir;
  Scratch() {
    static std::mt19937_64 rng(std::random_device{}());
    dir = fs::temp_directory_path() /
          ("scld_pipe_" + std::to_string(rng()));
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
  std::string file(const std::string& name) const {
    return (dir / name).string();
  }
};

PipelineConfig synthetic_config(std::uint64_t seed, double corruption = 0.0) {
  PipelineConfig config;
  scld::SyntheticSpec spec;
  spec.seed = seed;
  spec.corruption_fraction = corruption;
  config.synthetic = spec;
  config.k = 5;
  return config;
}

}  // namespace

TEST_CASE("config validation") {
  PipelineConfig config;
  // No data source selected.
  CHECK_THROWS_AS(config.validate(), scld::InvalidArgument);

  config = synthetic_config(0);
  config.input_path = "also_a_file.csv";
  CHECK_THROWS_AS(config.validate(), scld::InvalidArgument);

  config = synthetic_config(0);
  config.labels_path = "labels.txt";  // labels only pair with file input
  CHECK_THROWS_AS(config.validate(), scld::InvalidArgument);

  config = synthetic_config(0);
  config.k = 1;
  CHECK_THROWS_AS(config.validate(), scld::InvalidArgument);

  config = synthetic_config(0);
  config.alpha = 0;
  CHECK_THROWS_AS(config.validate(), scld::InvalidArgument);

  config = synthetic_config(0);
  config.rank_tol = 1.0;
  CHECK_THROWS_AS(config.validate(), scld::InvalidArgument);

  config = synthetic_config(0);
  CHECK_NOTHROW(config.validate());
}

TEST_CASE("clean synthetic run clusters exactly") {
  const RunRecord record = scld::run_pipeline(synthetic_config(42));
  REQUIRE(record.error_rate.has_value());
  CHECK(*record.error_rate == 0.0);
  CHECK(record.termination == "converged");
  CHECK(record.iterations <= 100);
  CHECK(static_cast<int>(record.labels.size()) == 100);
  CHECK(record.duration_seconds > 0.0);
  CHECK(record.residual_trace.size() ==
        static_cast<std::size_t>(record.iterations));
}

TEST_CASE("error classes are distinct along the ingestion path") {
  Scratch tmp;

  SUBCASE("missing input file") {
    PipelineConfig config;
    config.input_path = tmp.file("absent.csv");
    config.k = 2;
    CHECK_THROWS_AS(scld::run_pipeline(config), scld::IoError);
  }
  SUBCASE("malformed row is a parse error naming the row") {
    scld::atomic_write_text(tmp.file("bad.csv"), "1,2,3\n4,huh,6\n");
    PipelineConfig config;
    config.input_path = tmp.file("bad.csv");
    config.k = 2;
    try {
      scld::run_pipeline(config);
      FAIL("expected a parse error");
    } catch (const scld::ParseError& e) {
      CHECK(e.line() == 2);
      CHECK(std::string(e.what()).find("row 2") != std::string::npos);
    }
  }
  SUBCASE("label count mismatch") {
    scld::atomic_write_text(tmp.file("m.csv"), "1,2,3\n4,5,6\n");
    scld::atomic_write_text(tmp.file("l.txt"), "0\n1\n");
    PipelineConfig config;
    config.input_path = tmp.file("m.csv");
    config.labels_path = tmp.file("l.txt");
    config.k = 2;
    CHECK_THROWS_AS(scld::run_pipeline(config), scld::DimensionMismatch);
  }
  SUBCASE("fewer samples than clusters") {
    scld::atomic_write_text(tmp.file("thin.csv"), "1,2\n3,4\n");
    PipelineConfig config;
    config.input_path = tmp.file("thin.csv");
    config.k = 5;
    CHECK_THROWS_AS(scld::run_pipeline(config), scld::InvalidArgument);
  }
}

TEST_CASE("ingest_matrix reads the serializer's output back") {
  Scratch tmp;
  scld::SyntheticSpec spec;
  spec.seed = 6;
  const scld::LabeledDataset data = scld::generate(spec);
  scld::write_matrix_csv(tmp.file("x.csv"), data.x);
  const DenseMatrix back = scld::ingest_matrix(tmp.file("x.csv"));
  CHECK((back.array() == data.x.array()).all());
}

TEST_CASE("repeated runs agree apart from the clock") {
  const PipelineConfig config = synthetic_config(9, 0.3);
  const RunRecord a = scld::run_pipeline(config);
  const RunRecord b = scld::run_pipeline(config);
  CHECK(a.labels == b.labels);
  CHECK(a.error_rate == b.error_rate);
  CHECK(a.iterations == b.iterations);
  CHECK(a.residual_trace == b.residual_trace);
  CHECK(a.objective_trace == b.objective_trace);

  nlohmann::json ja = a;
  nlohmann::json jb = b;
  ja.erase("duration_seconds");
  jb.erase("duration_seconds");
  CHECK(ja == jb);
}

TEST_CASE("records and configs round-trip through JSON losslessly") {
  RunRecord record = scld::run_pipeline(synthetic_config(3, 0.2));
  record.config.solver.z_init = DenseMatrix::Random(3, 3);

  const std::string dumped = nlohmann::json(record).dump();
  const RunRecord back = nlohmann::json::parse(dumped).get<RunRecord>();

  CHECK(back.labels == record.labels);
  CHECK(back.error_rate == record.error_rate);
  CHECK(back.iterations == record.iterations);
  CHECK(back.residual_trace == record.residual_trace);
  CHECK(back.objective_trace == record.objective_trace);
  CHECK(back.termination == record.termination);
  CHECK(back.duration_seconds == record.duration_seconds);

  CHECK(back.config.k == record.config.k);
  CHECK(back.config.alpha == record.config.alpha);
  CHECK(back.config.side == record.config.side);
  CHECK(back.config.rank_tol == record.config.rank_tol);
  CHECK(back.config.seed == record.config.seed);
  REQUIRE(back.config.synthetic.has_value());
  CHECK(back.config.synthetic->seed == record.config.synthetic->seed);
  CHECK(back.config.synthetic->corruption_fraction ==
        record.config.synthetic->corruption_fraction);
  CHECK(back.config.solver.rho == record.config.solver.rho);
  CHECK(back.config.solver.beta0 == record.config.solver.beta0);
  CHECK(back.config.solver.gamma == record.config.solver.gamma);
  CHECK(back.config.solver.tol == record.config.solver.tol);
  REQUIRE(back.config.solver.z_init.has_value());
  CHECK((back.config.solver.z_init->array() ==
         record.config.solver.z_init->array())
            .all());
}

TEST_CASE("column permutation permutes the partition") {
  Scratch tmp;
  scld::SyntheticSpec spec;
  spec.seed = 14;
  const scld::LabeledDataset data = scld::generate(spec);
  const int n = static_cast<int>(data.x.cols());

  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937_64 rng(99);
  std::shuffle(perm.begin(), perm.end(), rng);

  DenseMatrix shuffled(data.x.rows(), n);
  std::vector<int> shuffled_truth(n);
  for (int j = 0; j < n; ++j) {
    shuffled.col(j) = data.x.col(perm[j]);
    shuffled_truth[j] = data.labels[perm[j]];
  }

  scld::write_matrix_csv(tmp.file("a.csv"), data.x);
  scld::write_labels_file(tmp.file("a.txt"), data.labels);
  scld::write_matrix_csv(tmp.file("b.csv"), shuffled);
  scld::write_labels_file(tmp.file("b.txt"), shuffled_truth);

  PipelineConfig config;
  config.k = 5;
  config.input_path = tmp.file("a.csv");
  config.labels_path = tmp.file("a.txt");
  const RunRecord a = scld::run_pipeline(config);
  config.input_path = tmp.file("b.csv");
  config.labels_path = tmp.file("b.txt");
  const RunRecord b = scld::run_pipeline(config);

  REQUIRE(a.error_rate.has_value());
  REQUIRE(b.error_rate.has_value());
  CHECK(*a.error_rate == 0.0);
  CHECK(*b.error_rate == 0.0);

  // Same partition seen through the permutation.
  std::vector<int> a_through_perm(n);
  for (int j = 0; j < n; ++j) a_through_perm[j] = a.labels[perm[j]];
  CHECK(scld::clustering_error(b.labels, a_through_perm).error_rate == 0.0);
}
