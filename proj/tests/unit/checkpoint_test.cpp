#include <gtest/gtest.h>

#include <sstream>

#include "hnls/checkpoint.hpp"
#include "hnls/errors.hpp"
#include "test_util.hpp"

using namespace hnls;

namespace {

std::string encode(const Checkpoint& c) {
  std::ostringstream os(std::ios::binary);
  write_checkpoint(os, c);
  return os.str();
}

Checkpoint decode(const std::string& bytes) {
  std::istringstream is(bytes, std::ios::binary);
  return read_checkpoint(is);
}

}  // namespace

TEST(Checkpoint, RoundTripIsBitExact) {
  for (const Grid& g : {Grid(TorusGrid(32)), Grid(LineGrid(128, 4))}) {
    const Checkpoint c{0.125, 3.5, hnls::testing::random_field(g, 3)};
    const auto back = decode(encode(c));
    EXPECT_EQ(back.t, c.t);
    EXPECT_EQ(back.p, c.p);
    EXPECT_TRUE(back.field.grid() == c.field.grid());
    for (std::size_t j = 0; j < c.field.size(); ++j) EXPECT_EQ(back.field[j], c.field[j]);
    EXPECT_EQ(encode(back), encode(c));
  }
}

TEST(Checkpoint, HeaderLayout) {
  const Checkpoint c{1.0, 3.0, ComplexField::constant(TorusGrid(16), 1.0)};
  const auto bytes = encode(c);
  EXPECT_EQ(bytes.substr(0, 4), "HNLS");
  EXPECT_EQ(static_cast<unsigned char>(bytes[4]), kCheckpointVersion);
  EXPECT_EQ(bytes[8], 0);
  EXPECT_EQ(static_cast<unsigned char>(bytes[9]), 16u);
  EXPECT_EQ(bytes.size(), 4u + 4 + 1 + 8 + 8 + 8 + 8 + 16 * 16);
}

TEST(Checkpoint, RejectsCorruptInput) {
  const Checkpoint c{0.0, 3.0, ComplexField::constant(TorusGrid(16), 1.0)};
  auto bytes = encode(c);
  auto bad_magic = bytes;
  bad_magic[0] = 'X';
  EXPECT_THROW(decode(bad_magic), IoError);
  auto bad_version = bytes;
  bad_version[4] = 9;
  EXPECT_THROW(decode(bad_version), IoError);
  EXPECT_THROW(decode(bytes.substr(0, bytes.size() - 3)), IoError);
  EXPECT_THROW(decode(""), IoError);
}

TEST(Checkpoint, MissingFileIsIoError) {
  EXPECT_THROW(load_checkpoint("/nonexistent/dir/x.bin"), IoError);
}
