from schreierlab.components.trial_pool import TrialPool, run_trials
