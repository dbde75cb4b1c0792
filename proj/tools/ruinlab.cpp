// Copyright 2026 The ruinlab Authors.
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "ruinlab/cli/commands.hpp"

int main(int argc, char** argv)
{
    return ruinlab::cli::run(argc, argv, std::cout, std::cerr);
}
