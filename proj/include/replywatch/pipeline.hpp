#ifndef REPLYWATCH_PIPELINE_HPP
#define REPLYWATCH_PIPELINE_HPP

#include <cstddef>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include "replywatch/civil_time.hpp"
#include "replywatch/eval_harness.hpp"
#include "replywatch/temporal.hpp"

namespace replywatch {

enum class Command { classify, stats, temporal, eval, topics };

struct RunConfig {
  Command command = Command::classify;
  std::filesystem::path tweets;
  std::filesystem::path registry;
  std::filesystem::path lexicon;
  std::filesystem::path topics;
  std::filesystem::path labeled;
  std::filesystem::path out = ".";
  std::optional<Date> start;
  std::optional<Date> end;
  std::size_t slice_min = 1;
  std::size_t slice_max = 10;
  Channel channel = Channel::abuse;
  SliceMode slice_mode = SliceMode::tiled;
  EvalFormat format = EvalFormat::labeled;
  std::size_t workers = 1;
  std::size_t chunk_lines = 2048;
  bool dump_verdicts = false;
  bool quiet = false;  // no stage timings on the error stream

  // Throws InputError on a violated invariant or a missing required path.
  void validate() const;
};

// Runs one subcommand end to end and writes its reports into `out`.
// Throws InputError / OutputError.
void run(const RunConfig& config, std::ostream& log);

// Parses argv, runs, and maps failures to exit codes: 0 ok, 1 usage or input
// error, 2 output or internal error.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// "3" or "1..10".
std::pair<std::size_t, std::size_t> parse_slice_range(std::string_view s);

}  // namespace replywatch

#endif  // REPLYWATCH_PIPELINE_HPP
