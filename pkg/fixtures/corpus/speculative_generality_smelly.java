package corpus;

// Reserved for a sync backend that was never commissioned.
public abstract class FutureSyncAdapter {
}
