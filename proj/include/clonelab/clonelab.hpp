#pragma once

#include "profile.hpp"
#include "clones.hpp"
#include "pqtree.hpp"
#include "scf.hpp"
#include "cc_transform.hpp"
#include "spf.hpp"
#include "rules.hpp"
#include "axioms.hpp"
#include "games.hpp"
