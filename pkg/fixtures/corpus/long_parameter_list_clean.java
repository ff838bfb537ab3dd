package corpus;

public class PickupScheduler {
    private int scheduledCount;

    public int schedulePickup(int loadKg, PickupWindow window, String depotCode) {
        scheduledCount = scheduledCount + 1;
        return loadKg + window.slotLengthMinutes() + depotCode.length();
    }
}
