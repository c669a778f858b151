/* Copyright 2026 The ascene Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef ASCENE_CLI_CLI_H_
#define ASCENE_CLI_CLI_H_

namespace ascene {
namespace cli {

// Entry point behind main(). Subcommands: convert, split, train, eval,
// predict. Logs go to stderr, data and reports to stdout. Returns 0 on
// success, 1 on expected failures (validation, bad data, usage), 2 on
// internal errors.
int run_cli(int argc, const char* const* argv);

}  // namespace cli
}  // namespace ascene

#endif  // ASCENE_CLI_CLI_H_
