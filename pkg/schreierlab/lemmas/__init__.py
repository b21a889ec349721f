from schreierlab.lemmas.bound_check import BoundCheck
from schreierlab.lemmas.double_count import DoubleCountRecord, double_count_check
from schreierlab.lemmas.growth import one_step_growth_check, explicit_growth_check
from schreierlab.lemmas.fill import FillRecord, fill_check, exact_cover_probability
from schreierlab.lemmas.schedule import ProofSchedule, proof_schedule, smallest_feasible_schedule, best_schedule
from schreierlab.lemmas.trace import GrowthTrace, TraceMode, growth_trace
from schreierlab.lemmas.pipeline import PipelineRecord, theorem_pipeline
