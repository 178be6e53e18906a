// Acceptance suite: one line per criterion, exit status 0 iff all pass.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "acceptance.hpp"
#include "dioph/table_io.hpp"

int main(int argc, char** argv) {
  using namespace dioph;
  acceptance::Options opt;
  for (int i = 1; i < argc; ++i) opt.only.push_back(std::atoi(argv[i]));
  if (const char* t = std::getenv("DIOPH_THREADS")) opt.exec.threads = static_cast<unsigned>(std::atoi(t));

  const auto start = std::chrono::steady_clock::now();
  PrimeTable table;
  if (const char* path = std::getenv("DIOPH_TABLE")) {
    table = load_table(path);
  } else {
    table = PrimeTable::build(acceptance::kTableLimit);
  }
  std::printf("prime table to %llu ready in %.2f s\n",
              static_cast<unsigned long long>(table.limit()),
              std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());

  int failed = 0;
  const auto results = acceptance::run(table, opt, [&](const acceptance::CriterionResult& r) {
    std::printf("%s\n", acceptance::format_line(r).c_str());
    std::fflush(stdout);
    if (!r.pass) ++failed;
  });
  std::printf("%zu criteria run, %zu passed, %d failed\n", results.size(),
              results.size() - static_cast<std::size_t>(failed), failed);
  return failed == 0 ? 0 : 1;
}
