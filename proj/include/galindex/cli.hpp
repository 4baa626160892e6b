#ifndef GALINDEX_CLI_HPP
#define GALINDEX_CLI_HPP

namespace galindex::cli {

/* Entry point of the command-line tool. Exit codes: 0 success, 1 formula /
 * oracle disagreement or invariant violation, 2 input error, 3 precision or
 * budget exhaustion. */
int run(int argc, const char* const* argv);

} // namespace galindex::cli

#endif
