// Copyright 2026 The txsched Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "txsched/bench.hpp"

int
main(int argc, char** argv)
{
    return txsched::runCli(argc, argv);
}
