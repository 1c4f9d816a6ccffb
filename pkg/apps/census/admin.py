from django.contrib import admin

from .models import CensusRun, CensusRecord


class CensusRecordInline(admin.TabularInline):
    model = CensusRecord
    extra = 0
    fields = ('position', 'digest')
    readonly_fields = ('position', 'digest')
    ordering = ('position',)


@admin.register(CensusRun)
class CensusRunAdmin(admin.ModelAdmin):
    list_display = ('n', 'orientable', 'seed', 'requested', 'found', 'samples', 'exhausted', 'updated_at')
    list_filter = ('orientable', 'exhausted', 'n')
    ordering = ('-created_at',)
    readonly_fields = ('id', 'samples', 'found', 'created_at', 'updated_at')
    inlines = [CensusRecordInline]


@admin.register(CensusRecord)
class CensusRecordAdmin(admin.ModelAdmin):
    list_display = ('run', 'position', 'digest', 'created_at')
    search_fields = ('digest',)
    ordering = ('run', 'position')
    readonly_fields = ('id', 'run', 'position', 'digest', 'text', 'created_at')
