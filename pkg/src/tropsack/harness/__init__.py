from .budget import BudgetExhausted, monte_carlo_budget
from .bench import BenchCase, BenchSummary, RunReport, fit_loglog_slope, \
    run_benchmark
from .generators import gen_balanced_instance, gen_random_instance
from .io import (InstanceFormatError, instance_digest, parse_instance,
                 parse_instance_text, write_instance, write_instance_text)
from .oracle import MAX_BRUTE_N, all_optimal_solutions, brute_force_opt
