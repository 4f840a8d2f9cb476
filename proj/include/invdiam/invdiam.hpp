#pragma once

#include "assignment.hpp"
#include "errors.hpp"
#include "family.hpp"
#include "gf2.hpp"
#include "graph.hpp"
#include "inversion.hpp"
#include "reducibility.hpp"
