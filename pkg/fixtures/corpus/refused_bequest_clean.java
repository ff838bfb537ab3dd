package corpus;

public class TaskQueue {
    private int pendingCount;
    private String upcomingName;

    public void enqueueTask(String taskName) {
        pendingCount = pendingCount + 1;
        upcomingName = taskName;
    }

    public int pendingTaskCount() {
        return pendingCount;
    }

    public String nextTaskName() {
        return upcomingName;
    }
}

class AuditedTaskQueue extends TaskQueue {
    private int auditedCount;

    @Override
    public void enqueueTask(String taskName) {
        auditedCount = auditedCount + 1;
    }

    public int auditedTotal() {
        return auditedCount + pendingTaskCount();
    }

    public String peekUpcoming() {
        return nextTaskName();
    }
}
