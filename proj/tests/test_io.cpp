#include "bagen/io.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace bagen;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) {
    return fs::temp_directory_path() / ("bagen_io_" + std::to_string(::getpid()) + "_" + name);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

GenParams uniform(NodeId n, std::uint64_t d) {
    GenParams p;
    p.n = n;
    p.d = d;
    return p;
}

} // namespace

TEST(ReadSeedGraph, Triangle) {
    std::istringstream in("0 1\n1 2\n2 0\n");
    const SeedGraph g = read_seed_graph(in);
    EXPECT_EQ(g.n0, 3U);
    EXPECT_EQ(g.m0, 3U);
    EXPECT_EQ(g.edges, (std::vector<NodeId>{0, 1, 1, 2, 2, 0}));
}

TEST(ReadSeedGraph, EmptyAndComments) {
    std::istringstream empty("");
    const SeedGraph g = read_seed_graph(empty);
    EXPECT_EQ(g.n0, 0U);
    EXPECT_EQ(g.m0, 0U);

    std::istringstream commented("# seed\n\n  4 1  # trailing\n\t2\t3\r\n");
    const SeedGraph h = read_seed_graph(commented);
    EXPECT_EQ(h.n0, 5U);
    EXPECT_EQ(h.edges, (std::vector<NodeId>{4, 1, 2, 3}));
}

TEST(ReadSeedGraph, MalformedLineReportsLineNumber) {
    std::istringstream bad("0 x\n");
    try {
        read_seed_graph(bad);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 1U);
    }
    std::istringstream later("0 1\n\n1 2 3\n");
    try {
        read_seed_graph(later);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3U);
    }
    std::istringstream neg("0 -1\n");
    EXPECT_THROW(read_seed_graph(neg), ParseError);
}

TEST(ReadSeedGraph, MissingFile) {
    EXPECT_THROW(read_seed_graph(std::string("/nonexistent/seed.txt")), std::system_error);
}

TEST(ReadDegreeFile, Basic) {
    std::istringstream in("3\n1\n2\n");
    EXPECT_EQ(read_degree_file(in), (DegreeSequence{3, 1, 2}));
    std::istringstream bad("3\nfour\n");
    try {
        read_degree_file(bad);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2U);
    }
}

TEST(WriteEdges, BinarySingleSelfLoop) {
    const auto path         = temp_file("one.bin");
    const std::vector<Edge> e{{0, 0}};
    write_edges(e, OutputFormat::BinaryEdgeList, path);
    EXPECT_EQ(slurp(path), std::string(16, '\0'));
    fs::remove(path);
}

TEST(WriteEdges, BinaryIsLittleEndian) {
    const auto path = temp_file("le.bin");
    const std::vector<Edge> e{{0x0102030405060708ULL, 9}};
    write_edges(e, OutputFormat::BinaryEdgeList, path);
    const std::string bytes = slurp(path);
    ASSERT_EQ(bytes.size(), 16U);
    EXPECT_EQ(static_cast<unsigned char>(bytes[0]), 0x08);
    EXPECT_EQ(static_cast<unsigned char>(bytes[7]), 0x01);
    EXPECT_EQ(static_cast<unsigned char>(bytes[8]), 9);
    EXPECT_EQ(read_binary_edges(path), e);
    fs::remove(path);
}

TEST(BinaryFileConsumer, IdenticalAcrossWorkers) {
    const Generator gen(uniform(1000, 2));
    const auto p1 = temp_file("w1.bin");
    const auto p4 = temp_file("w4.bin");
    run(gen, BinaryFileConsumer(p1, gen.m0(), gen.m()), 1, 64);
    run(gen, BinaryFileConsumer(p4, gen.m0(), gen.m()), 4, 33);
    const std::string a = slurp(p1);
    EXPECT_EQ(a.size(), 2000U * 16U);
    EXPECT_EQ(a, slurp(p4));

    std::vector<Edge> direct;
    for (EdgeIndex i = 0; i < gen.m(); ++i) direct.push_back(gen.edge(i));
    EXPECT_EQ(read_binary_edges(p1), direct);
    fs::remove(p1);
    fs::remove(p4);
}

TEST(BinaryFileConsumer, SeedOffsetAndNodeBatches) {
    GenParams p         = uniform(300, 4);
    p.n0                = 3;
    p.seed_edges        = test::triangle_seed();
    p.no_parallel_edges = true;
    const Generator gen(p);
    const auto path = temp_file("seed.bin");
    run(gen, BinaryFileConsumer(path, gen.m0(), gen.m()), 3, 10);
    const auto edges = read_binary_edges(path);
    ASSERT_EQ(edges.size(), gen.m() - gen.m0());
    for (NodeId v = 3; v < 300; ++v) {
        const auto expected = gen.node_edges(v);
        for (std::size_t k = 0; k < 4; ++k) ASSERT_EQ(edges[gen.first_edge(v) - gen.m0() + k], expected[k]);
    }
    fs::remove(path);
}

TEST(TextOutput, RoundTripThroughSeedReader) {
    const Generator gen(uniform(200, 3));
    std::ostringstream os;
    const auto res = run(gen, TextStreamConsumer(os), 1, 50);
    EXPECT_EQ(res.result, 600U);

    std::istringstream in(os.str());
    const SeedGraph back = read_seed_graph(in);
    ASSERT_EQ(back.m0, 600U);
    std::vector<Edge> read, direct;
    for (std::size_t k = 0; k < back.m0; ++k) read.push_back({back.edges[2 * k], back.edges[2 * k + 1]});
    for (EdgeIndex i = 0; i < gen.m(); ++i) direct.push_back(gen.edge(i));
    std::sort(read.begin(), read.end());
    std::sort(direct.begin(), direct.end());
    EXPECT_EQ(read, direct);
}

TEST(TextOutput, RejectsMultipleWorkers) {
    const Generator gen(uniform(20, 1));
    std::ostringstream os;
    EXPECT_THROW(run(gen, TextStreamConsumer(os), 4, 5), ParameterError);
}
