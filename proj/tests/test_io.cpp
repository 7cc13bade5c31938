#include <cmath>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "rotavg/error.hpp"
#include "rotavg/io.hpp"
#include "rotavg/synth.hpp"
#include "test_util.hpp"

namespace rotavg {
namespace {

std::string info_block() {
  std::string s;
  for (int t = 0; t < 21; ++t) s += " 0";
  return s;
}

std::string g2o_edge(long long a, long long b, const UnitQuaternion& q) {
  std::ostringstream os;
  os.precision(17);
  os << "EDGE_SE3:QUAT " << a << ' ' << b << " 0 0 0 " << q.qx << ' ' << q.qy << ' ' << q.qz
     << ' ' << q.qw << info_block() << '\n';
  return os.str();
}

ErrorCode code_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no Error thrown";
  return ErrorCode::kInvalidArgument;
}

long line_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.line();
  }
  return -1;
}

TEST(G2o, IdentityEdge) {
  std::istringstream in(g2o_edge(0, 1, {0, 0, 0, 1}));
  const LoadedGraph g = parse_g2o(in);
  ASSERT_EQ(g.graph.num_edges(), 1u);
  EXPECT_MAT_NEAR(g.graph.edges()[0].rotation, Mat3::Identity(), 0.0);
}

TEST(G2o, NinetyDegreesAboutZIsTransposed) {
  const double h = std::sqrt(0.5);
  std::istringstream in(g2o_edge(0, 1, {0, 0, h, h}));
  const LoadedGraph g = parse_g2o(in);
  EXPECT_MAT_NEAR(g.graph.edges()[0].rotation, rot_z(-std::numbers::pi / 2), 1e-15);
}

TEST(G2o, ShortEdgeLineIsMalformedOnLineOne) {
  std::istringstream in("EDGE_SE3:QUAT 0 1 0 0 0\n");
  auto fn = [&] { parse_g2o(in); };
  try {
    fn();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMalformedLine);
    EXPECT_EQ(e.line(), 1);
  }
}

TEST(G2o, LineNumbersCountCommentsAndBlanks) {
  std::istringstream in("# header\n\n" + g2o_edge(0, 1, {0, 0, 0, 1}) + "EDGE_SE3:QUAT 1 x" +
                        info_block() + " 0 0 0 0 0 0 0 0\n");
  EXPECT_EQ(line_of([&] { parse_g2o(in); }), 4);
}

TEST(G2o, Rejections) {
  {
    std::istringstream in(g2o_edge(0, 1, {0, 0, 0, 1.1}));
    EXPECT_EQ(code_of([&] { parse_g2o(in); }), ErrorCode::kNonUnitQuaternion);
  }
  {
    std::istringstream in("EDGE_SE2 0 1 0 0 0 1 0 0 1 0 1\n");
    EXPECT_EQ(code_of([&] { parse_g2o(in); }), ErrorCode::kUnsupportedFormat);
  }
  {
    std::istringstream in(g2o_edge(3, 3, {0, 0, 0, 1}));
    EXPECT_EQ(code_of([&] { parse_g2o(in); }), ErrorCode::kInvalidGraph);
  }
  {
    std::istringstream in("VERTEX_SE3:QUAT 0 0 0 0 0 0 0\n");
    EXPECT_EQ(code_of([&] { parse_g2o(in); }), ErrorCode::kMalformedLine);
  }
}

TEST(G2o, SlightlyNonUnitQuaternionIsAccepted) {
  std::istringstream in(g2o_edge(0, 1, {0, 0, 0, 1.0005}));
  const LoadedGraph g = parse_g2o(in);
  EXPECT_TRUE(is_rotation(g.graph.edges()[0].rotation, 1e-12));
}

TEST(G2o, DuplicatesAndUnknownLines) {
  const std::string text = "VERTEX_SE3:QUAT 0 0 0 0 0 0 0 1\n"
                           "FIX 0\n" +
                           g2o_edge(0, 1, {0, 0, 0, 1}) + g2o_edge(1, 0, {1, 0, 0, 0}) +
                           g2o_edge(0, 1, {0, 1, 0, 0});
  std::istringstream in(text);
  const LoadedGraph g = parse_g2o(in);
  EXPECT_EQ(g.graph.num_edges(), 1u);
  EXPECT_EQ(g.duplicate_edges, 2);
  EXPECT_EQ(g.skipped_lines, 1);
  EXPECT_MAT_NEAR(g.graph.edges()[0].rotation, Mat3::Identity(), 0.0);
}

TEST(G2o, IdsAreRemappedInOrder) {
  std::istringstream in("VERTEX_SE3:QUAT 7 0 0 0 0 0 0 1\n" + g2o_edge(100, 42, {0, 0, 0, 1}) +
                        g2o_edge(42, 7, {0, 0, 0, 1}));
  const LoadedGraph g = parse_g2o(in);
  EXPECT_EQ(g.original_ids, (std::vector<long long>{7, 42, 100}));
  EXPECT_TRUE(g.graph.has_edge(1, 2));
  EXPECT_TRUE(g.graph.has_edge(0, 1));
}

// Vertex orientations W_i (body to world) and relative edges W_a^T W_b: the
// parsed graph must be consistent with camera rotations R_i = W_i^T.
TEST(G2o, NoiselessLoopIsConsistentWithVertexOrientations) {
  Rng rng(3);
  const int n = 8;
  RotationStack W(n);
  for (auto& w : W) w = rng.rotation();
  std::string text;
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    text += g2o_edge(i, j, rotation_to_quat(W[i].transpose() * W[j]));
  }
  text += g2o_edge(5, 2, rotation_to_quat(W[5].transpose() * W[2]));
  std::istringstream in(text);
  const LoadedGraph g = parse_g2o(in);
  RotationStack R(n);
  for (int i = 0; i < n; ++i) R[i] = W[i].transpose();
  EXPECT_LT(chordal_cost(R, MeasurementMatrix(g.graph)), 1e-24);
}

TEST(Native, RoundTripIsExact) {
  const SynthInstance inst = generate({30, 0.4, 0.1, GraphStyle::kSfm, 4});
  std::stringstream ss;
  write_native(inst.graph, ss);
  const CameraGraph back = parse_native(ss);
  ASSERT_EQ(back.num_vertices(), 30);
  ASSERT_EQ(back.num_edges(), inst.graph.num_edges());
  for (std::size_t e = 0; e < back.num_edges(); ++e) {
    EXPECT_EQ(back.edges()[e].i, inst.graph.edges()[e].i);
    EXPECT_EQ(back.edges()[e].j, inst.graph.edges()[e].j);
    EXPECT_MAT_NEAR(back.edges()[e].rotation, inst.graph.edges()[e].rotation, 1e-15);
  }
}

TEST(Native, TwoCameraFileHasTwoLines) {
  CameraGraph g(2);
  g.add_edge(0, 1, Mat3::Identity());
  std::stringstream ss;
  write_native(g, ss);
  const std::string text = ss.str();
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 2);
  EXPECT_EQ(text.substr(0, 4), "n 2\n");
}

TEST(Native, Rejections) {
  {
    std::istringstream in("n 2\nE 0 1 -1 0 0 0 1 0 0 0 1\n");
    try {
      parse_native(in);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kNotARotation);
      EXPECT_EQ(e.line(), 2);
    }
  }
  {
    std::istringstream in("n 2\nE 0 1 1 0 0\n");
    EXPECT_EQ(code_of([&] { parse_native(in); }), ErrorCode::kMalformedLine);
  }
  {
    std::istringstream in("n 2\nE 0 5 1 0 0 0 1 0 0 0 1\n");
    EXPECT_EQ(line_of([&] { parse_native(in); }), 2);
  }
  {
    std::istringstream in("E 0 1 1 0 0 0 1 0 0 0 1\n");
    EXPECT_EQ(code_of([&] { parse_native(in); }), ErrorCode::kMalformedLine);
  }
}

TEST(Native, G2oThroughNativePreservesMeasurementMatrix) {
  Rng rng(8);
  std::string text;
  for (int i = 0; i < 12; ++i) {
    for (int j = i + 1; j < 12; j += 3) text += g2o_edge(i, j, rotation_to_quat(rng.rotation()));
  }
  std::istringstream in(text);
  const LoadedGraph g = parse_g2o(in);
  std::stringstream ss;
  write_native(g.graph, ss);
  const CameraGraph back = parse_native(ss);
  EXPECT_LE((MeasurementMatrix(g.graph).dense() - MeasurementMatrix(back).dense()).cwiseAbs().maxCoeff(),
            1e-12);
}

TEST(Rotations, RoundTrip) {
  const RotationStack R = random_stack(9, 2);
  std::stringstream ss;
  write_rotations(R, ss);
  const RotationStack back = parse_rotations(ss);
  ASSERT_EQ(back.size(), R.size());
  for (std::size_t i = 0; i < R.size(); ++i) EXPECT_MAT_NEAR(back[i], R[i], 0.0);
}

SolveReport small_report() {
  const SynthInstance inst = generate({10, 0.5, 0.1, GraphStyle::kSfm, 1});
  return rcd_solve(MeasurementMatrix(inst.graph), random_stack(10, 1), SolveConfig{});
}

TEST(Results, CsvHeaderAndRows) {
  const SolveReport r = small_report();
  ResultRecord rec;
  rec.report = &r;
  std::stringstream ss;
  write_results(rec, ss, ResultFormat::kCsv);
  std::string line;
  std::getline(ss, line);
  EXPECT_EQ(line, "epoch,objective,flips,seconds");
  int rows = 0;
  while (std::getline(ss, line)) {
    if (!line.empty()) ++rows;
  }
  EXPECT_EQ(rows, r.epochs);
}

TEST(Results, JsonLinesParseAndRoundTripObjectives) {
  const SolveReport r = small_report();
  ResultRecord rec;
  rec.report = &r;
  rec.config_json = R"({"solver":"rcd"})";
  rec.include_timing = false;
  std::stringstream ss;
  write_results(rec, ss, ResultFormat::kJsonLines);
  std::string line;
  int cameras = 0, epochs = 0, summaries = 0;
  while (std::getline(ss, line)) {
    const auto j = nlohmann::json::parse(line);
    const std::string type = j.at("type");
    if (type == "summary") {
      ++summaries;
      EXPECT_EQ(j.at("objective").get<double>(), r.final_objective());
    } else if (type == "camera") {
      ++cameras;
    } else if (type == "epoch") {
      EXPECT_EQ(j.at("objective").get<double>(), r.objective_trace[epochs]);
      EXPECT_EQ(j.at("seconds").get<double>(), 0.0);
      ++epochs;
    }
  }
  EXPECT_EQ(summaries, 1);
  EXPECT_EQ(cameras, 10);
  EXPECT_EQ(epochs, r.epochs);
}

TEST(Formats, Names) {
  EXPECT_EQ(parse_format_name("g2o"), GraphFileFormat::kG2o);
  EXPECT_EQ(parse_format_name("native"), GraphFileFormat::kNative);
  EXPECT_THROW(parse_format_name("ply"), Error);
  EXPECT_EQ(guess_format("a/b.g2o"), GraphFileFormat::kG2o);
  EXPECT_EQ(guess_format("a/b.txt"), GraphFileFormat::kNative);
}

}  // namespace
}  // namespace rotavg
