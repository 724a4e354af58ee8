#pragma once

/**
 * Problem files: INI-style blocks declaring rings, algebras, sequences,
 * deformations and algebra maps, followed by a [commands] block.  The grammar
 * is documented in docs/problem-format.md.
 */

#include <map>
#include <string>
#include <vector>

#include "infcycle/artin.hpp"
#include "infcycle/cycles.hpp"

namespace infcycle {

struct SourceLoc {
    int line = 0;
    int column = 0;
};

struct CommandArg {
    std::string text;
    SourceLoc loc;
};

struct Command {
    SourceLoc loc;
    std::string text;  ///< the whole command line, trimmed
    std::string name;
    std::vector<CommandArg> positional;
    std::map<std::string, CommandArg> options;
};

struct Problem {
    Problem() = default;
    Problem(Problem&&) = default;
    Problem& operator=(Problem&&) = default;
    Problem(const Problem&) = delete;
    Problem& operator=(const Problem&) = delete;

    std::map<std::string, PolyContext> rings;
    std::map<std::string, ArtinAlgebra> algebras;  ///< node-stable: maps point into it
    std::map<std::string, SubvarietyGerm> sequences;
    std::map<std::string, Deformation> deformations;
    std::map<std::string, AlgebraMap> maps;
    std::vector<Command> commands;

    const ArtinAlgebra& algebra(const CommandArg& ref) const;
    const PolyContext& ring(const CommandArg& ref) const;
    const SubvarietyGerm& sequence(const CommandArg& ref) const;
    const Deformation& deformation(const CommandArg& ref) const;
    const AlgebraMap& map(const CommandArg& ref) const;
};

/// Parses a problem; every error is an InputError carrying line and column.
Problem parse_problem(const std::string& text);
Problem load_problem(const std::string& path);

/// Splits a command line into tokens; brackets and parentheses keep their contents together.
std::vector<CommandArg> tokenize_command(const std::string& line, int line_no);

}  // namespace infcycle
