#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "lrc/checkpoint.hpp"

using namespace lrc;

namespace {

std::string temp_path(const char* name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("scan record json round trip") {
  ScanRecord rec{12, 4, 4, 3, 9, true};
  auto back = scan_record_from_json(scan_record_to_json(rec));
  CHECK(back.n == rec.n);
  CHECK(back.level == rec.level);
  CHECK(back.cardinality == rec.cardinality);
  CHECK(back.a_start == rec.a_start);
  CHECK(back.b_start == rec.b_start);
  CHECK(back.ok == rec.ok);
  CHECK(back.key() == rec.key());

  ScanRecord fail{8, 2, 1, 2, 4, false};
  CHECK(scan_record_from_json(scan_record_to_json(fail)).ok == false);

  CHECK(rec.key() != fail.key());
  CHECK_THROWS(scan_record_from_json("not json"));
}

TEST_CASE("checkpoint file append and replay") {
  const std::string path = temp_path("lrc_ckpt_test.jsonl");
  std::remove(path.c_str());

  {
    CheckpointFile ckpt(path);
    CHECK(ckpt.replay().empty());
    ckpt.append({10, 2, 1, 1, 2, true});
    ckpt.append({10, 2, 1, 1, 3, false});
    ckpt.flush();
    ckpt.append({10, 4, 4, 1, 5, true});
    ckpt.flush();
  }

  CheckpointFile reopened(path);
  auto records = reopened.replay();
  REQUIRE(records.size() == 3);
  CHECK(records[0].b_start == 2);
  CHECK(records[0].ok);
  CHECK_FALSE(records[1].ok);
  CHECK(records[2].level == 4);
  CHECK(records[2].cardinality == 4);

  // appending to an existing file preserves earlier records
  reopened.append({10, 4, 4, 1, 6, true});
  reopened.flush();
  CHECK(CheckpointFile(path).replay().size() == 4);

  std::remove(path.c_str());
}

TEST_CASE("replay ignores a trailing partial line") {
  const std::string path = temp_path("lrc_ckpt_partial.jsonl");
  std::remove(path.c_str());
  {
    CheckpointFile ckpt(path);
    ckpt.append({6, 2, 2, 1, 3, true});
    ckpt.flush();
  }
  {
    std::ofstream out(path, std::ios::app);
    out << "{\"n\":6,\"two_m\":2,\"card\"";  // truncated write
  }
  auto records = CheckpointFile(path).replay();
  CHECK(records.size() == 1);
  std::remove(path.c_str());
}
