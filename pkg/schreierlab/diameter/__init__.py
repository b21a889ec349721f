from schreierlab.diameter.report import DiameterMethod, DiameterReport
from schreierlab.diameter.diameter import exact_diameter, pivot_bounds, auto_diameter, all_pairs_work
