#pragma once

#include "lpa/error.hpp"
#include "lpa/field.hpp"
#include "lpa/matrix.hpp"
#include "lpa/laurent.hpp"
#include "lpa/graph.hpp"
#include "lpa/path.hpp"
#include "lpa/cycles.hpp"
#include "lpa/algebra.hpp"
#include "lpa/groupoid.hpp"
#include "lpa/module.hpp"
#include "lpa/intertwiner.hpp"
#include "lpa/certificates.hpp"
#include "lpa/classify.hpp"
#include "lpa/text.hpp"
